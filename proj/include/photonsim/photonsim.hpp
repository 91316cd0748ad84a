#pragma once

#include "benchmark.hpp"
#include "biexciton.hpp"
#include "cluster.hpp"
#include "csv.hpp"
#include "distinguishability.hpp"
#include "emitter.hpp"
#include "errors.hpp"
#include "fock_engine.hpp"
#include "fock_state.hpp"
#include "fusion.hpp"
#include "heralded.hpp"
#include "interferometer.hpp"
#include "limits.hpp"
#include "mesh.hpp"
#include "permanent.hpp"
#include "qubits.hpp"
#include "rng.hpp"
#include "version.hpp"
