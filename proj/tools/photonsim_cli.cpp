// photonsim command-line front end. Every subcommand writes one CSV or
// JSON document that embeds the tool version, the seed and the parameters.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <photonsim/photonsim.hpp>

namespace ps = photonsim;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kIo = 1, kBadInput = 2, kResource = 3, kNumerical = 4 };

// Shortest text that reads back to the same double.
std::string num(double x) {
    if (x == 0) {
        x = 0;
    }
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

int parse_int(const std::string &s) {
    int v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) {
        throw ps::DomainError("bad integer '" + s + "'");
    }
    return v;
}

double parse_double(const std::string &s) {
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw ps::DomainError("bad number '" + s + "'");
    }
    if (used != s.size()) {
        throw ps::DomainError("bad number '" + s + "'");
    }
    return v;
}

// "2..4" or "1,2,4".
std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        int lo = parse_int(text.substr(0, dots));
        int hi = parse_int(text.substr(dots + 2));
        if (hi < lo) {
            throw ps::DomainError("empty range '" + text + "'");
        }
        for (int k = lo; k <= hi; k++) {
            out.push_back(k);
        }
        return out;
    }
    for (const auto &s : split(text, ',')) {
        out.push_back(parse_int(s));
    }
    if (out.empty()) {
        throw ps::DomainError("empty list");
    }
    return out;
}

std::vector<double> parse_double_list(const std::string &text) {
    std::vector<double> out;
    for (const auto &s : split(text, ',')) {
        out.push_back(parse_double(s));
    }
    if (out.empty()) {
        throw ps::DomainError("empty list");
    }
    return out;
}

ps::IdConvention parse_convention(const std::string &s) {
    if (s == "hom_visibility") {
        return ps::IdConvention::hom_visibility;
    }
    return ps::IdConvention::overlap;
}

// Flat key/value config files, TOML or a JSON object, applied to the
// subcommand named on the command line.
class FlatConfig : public CLI::ConfigTOML {
   public:
    std::string section;

    std::vector<CLI::ConfigItem> from_config(std::istream &in) const override {
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        auto first = text.find_first_not_of(" \t\r\n");
        std::vector<CLI::ConfigItem> items;
        if (first != std::string::npos && text[first] == '{') {
            json j;
            try {
                j = json::parse(text);
            } catch (const json::exception &e) {
                throw CLI::ConversionError(std::string("config: ") + e.what());
            }
            for (const auto &[key, value] : j.items()) {
                CLI::ConfigItem item;
                item.name = key;
                if (value.is_object()) {
                    throw CLI::ConversionError("config key '" + key + "' must be flat");
                }
                if (value.is_array()) {
                    std::string joined;
                    for (const auto &v : value) {
                        joined += (joined.empty() ? "" : ",") + scalar(v);
                    }
                    item.inputs = {joined};
                } else {
                    item.inputs = {scalar(value)};
                }
                items.push_back(item);
            }
        } else {
            std::istringstream again(text);
            items = CLI::ConfigTOML::from_config(again);
        }
        for (auto &item : items) {
            if (item.parents.empty() && !section.empty()) {
                item.parents = {section};
            }
        }
        return items;
    }

   private:
    static std::string scalar(const json &v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_boolean()) {
            return v.get<bool>() ? "true" : "false";
        }
        return v.dump();
    }
};

// Output options and parameter echo shared by every subcommand.
struct Run {
    std::string command;
    std::string format;
    std::string out;
    std::optional<uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> params;

    void param(const std::string &key, const std::string &value) { params.emplace_back(key, value); }
    void param(const std::string &key, double value) { params.emplace_back(key, num(value)); }
    void param(const std::string &key, int value) { params.emplace_back(key, std::to_string(value)); }

    uint64_t require_seed() const {
        if (!seed) {
            throw ps::DomainError(command + " is stochastic and needs --seed");
        }
        return *seed;
    }

    ps::CsvWriter csv() const {
        ps::CsvWriter w;
        w.comment(std::string("photonsim ") + ps::kVersion);
        w.comment("command: " + command);
        w.comment("seed: " + (seed ? std::to_string(*seed) : std::string("none")));
        for (const auto &[k, v] : params) {
            w.comment(k + " = " + v);
        }
        return w;
    }

    json header() const {
        json j;
        j["tool"] = "photonsim";
        j["version"] = ps::kVersion;
        j["command"] = command;
        j["seed"] = seed ? json(*seed) : json(nullptr);
        json p = json::object();
        for (const auto &[k, v] : params) {
            p[k] = v;
        }
        j["parameters"] = p;
        return j;
    }

    void emit(const std::string &content) const {
        if (out.empty()) {
            std::cout << content;
        } else {
            ps::write_atomic(out, content);
        }
    }
    void emit(const json &j) const { emit(j.dump(2) + "\n"); }
};

CLI::App *add_command(CLI::App &app, const std::string &name, const std::string &help, Run &run,
                      const std::string &default_format) {
    auto *sub = app.add_subcommand(name, help);
    run.command = name;
    run.format = default_format;
    sub->add_option("--seed", run.seed, "Random seed, echoed in the output");
    sub->add_option("--out", run.out, "Output path; stdout when omitted");
    sub->add_option("--format", run.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    return sub;
}

json complex_matrix(const ps::CMatrix &m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        json rr = json::array();
        json ir = json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            rr.push_back(m(r, c).real());
            ir.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ir);
    }
    return json{{"real", re}, {"imag", im}};
}

ps::CMatrix complex_matrix(const json &j) {
    const auto &re = j.at("real");
    const auto &im = j.at("imag");
    const auto n = static_cast<Eigen::Index>(re.size());
    if (n == 0 || im.size() != re.size()) {
        throw ps::ShapeError("unitary must be a non-empty square matrix");
    }
    ps::CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; r++) {
        const auto &rr = re.at(static_cast<size_t>(r));
        const auto &ir = im.at(static_cast<size_t>(r));
        if (static_cast<Eigen::Index>(rr.size()) != n || static_cast<Eigen::Index>(ir.size()) != n) {
            throw ps::ShapeError("unitary must be a non-empty square matrix");
        }
        for (Eigen::Index c = 0; c < n; c++) {
            m(r, c) = ps::cdouble(rr.at(static_cast<size_t>(c)).get<double>(), ir.at(static_cast<size_t>(c)).get<double>());
        }
    }
    return m;
}

// hom ----------------------------------------------------------------------

struct HomArgs {
    double v = 1;
};

void cmd_hom(const HomArgs &a, Run &run) {
    run.param("V", a.v);
    const double closed = ps::hom_coincidence(a.v);
    auto dist = ps::partial_distribution(ps::Interferometer::beamsplitter(), ps::FockState{1, 1},
                                         ps::DistinguishabilityModel::uniform(a.v, 2));
    const double fock = dist.at(ps::FockState{1, 1});
    const double diff = std::abs(closed - fock);
    if (diff > 1e-9) {
        throw ps::NumericalError("closed form and Fock simulation disagree by " + num(diff));
    }
    if (run.format == "json") {
        json j = run.header();
        j["coincidence"] = closed;
        j["coincidence_fock"] = fock;
        j["abs_difference"] = diff;
        run.emit(j);
        return;
    }
    auto w = run.csv();
    w.row({"V", "coincidence", "coincidence_fock", "abs_difference"});
    w.row({ps::sci(a.v), ps::sci(closed), ps::sci(fock), ps::sci(diff)});
    run.emit(w.str());
}

// delta --------------------------------------------------------------------

struct DeltaArgs {
    double v = 1;
    std::string n = "2..4";
    int seeds = 1;
    std::string ref = "both";
    int modes = 0;
    std::string convention = "hom_visibility";
};

void cmd_delta(const DeltaArgs &a, Run &run) {
    const uint64_t seed = run.require_seed();
    auto n_values = parse_int_list(a.n);
    if (a.seeds < 1) {
        throw ps::DomainError("--seeds must be positive");
    }
    run.param("V", a.v);
    run.param("n", a.n);
    run.param("seeds", a.seeds);
    run.param("ref", a.ref);
    run.param("modes", a.modes);
    run.param("convention", a.convention);
    std::vector<uint64_t> seeds;
    for (int k = 0; k < a.seeds; k++) {
        seeds.push_back(seed + static_cast<uint64_t>(k));
    }
    ps::BenchmarkOptions opt;
    opt.modes = a.modes;
    opt.convention = parse_convention(a.convention);
    auto rows = ps::delta_curve(a.v, n_values, seeds, opt);

    const bool ideal = a.ref != "distinguishable";
    const bool dist = a.ref != "ideal";
    if (run.format == "json") {
        json j = run.header();
        json arr = json::array();
        for (const auto &r : rows) {
            json row{{"N", r.photon_number}, {"V", r.id_value}, {"seed", r.reference_unitary_seed}, {"modes", r.modes}};
            if (ideal) {
                row["delta_ideal"] = r.delta_to_ideal;
            }
            if (dist) {
                row["delta_dist"] = r.delta_to_distinguishable;
            }
            arr.push_back(row);
        }
        j["rows"] = arr;
        run.emit(j);
        return;
    }
    auto w = run.csv();
    std::vector<std::string> head{"N", "V", "seed"};
    if (ideal) {
        head.push_back("delta_ideal");
    }
    if (dist) {
        head.push_back("delta_dist");
    }
    w.row(head);
    for (const auto &r : rows) {
        std::vector<std::string> f{std::to_string(r.photon_number), ps::sci(r.id_value),
                                   std::to_string(r.reference_unitary_seed)};
        if (ideal) {
            f.push_back(ps::sci(r.delta_to_ideal));
        }
        if (dist) {
            f.push_back(ps::sci(r.delta_to_distinguishable));
        }
        w.row(f);
    }
    run.emit(w.str());
}

// demux --------------------------------------------------------------------

struct DemuxArgs {
    std::string n = "1,2,4,8";
    std::string switches = "1.0,0.95,0.90";
    double efficiency = 0.78;
    double rate = 1e9;
    double external = 0.90;
    double g2 = 0;
    int64_t blocks = 0;
};

void cmd_demux(const DemuxArgs &a, Run &run) {
    auto n_values = parse_int_list(a.n);
    auto switches = parse_double_list(a.switches);
    if (a.blocks < 0) {
        throw ps::DomainError("--blocks must be non-negative");
    }
    const bool mc = a.blocks > 0;
    const uint64_t seed = mc ? run.require_seed() : 0;
    ps::SourceModel src;
    src.end_to_end_efficiency = a.efficiency;
    src.repetition_rate = a.rate;
    src.g2 = a.g2;
    src.validate();
    run.param("n", a.n);
    run.param("switch", a.switches);
    run.param("efficiency", a.efficiency);
    run.param("rate_hz", a.rate);
    run.param("external", a.external);
    run.param("g2", a.g2);
    run.params.emplace_back("blocks", std::to_string(a.blocks));

    auto rows = ps::rate_curve(src, switches, n_values, a.external);
    struct Mc {
        double rate = 0;
        double stderr_rate = 0;
    };
    std::vector<Mc> mcs(rows.size());
    if (mc) {
        ps::Rng base(seed);
        for (size_t i = 0; i < rows.size(); i++) {
            ps::Rng r = base.split(i);
            ps::DemuxPlan plan(rows[i].channels, rows[i].switch_transmission, a.external);
            auto s = ps::simulate_coincidences(src, plan, a.blocks, r);
            const double f = s.fraction();
            const double scale = src.repetition_rate / rows[i].channels;
            mcs[i] = {scale * f, scale * std::sqrt(f * (1 - f) / static_cast<double>(a.blocks))};
        }
    }
    if (run.format == "json") {
        json j = run.header();
        json arr = json::array();
        for (size_t i = 0; i < rows.size(); i++) {
            json row{{"N", rows[i].channels}, {"switch_transmission", rows[i].switch_transmission},
                     {"rate_hz", rows[i].rate_hz}};
            if (mc) {
                row["mc_rate_hz"] = mcs[i].rate;
                row["mc_stderr_hz"] = mcs[i].stderr_rate;
            }
            arr.push_back(row);
        }
        j["rows"] = arr;
        run.emit(j);
        return;
    }
    auto w = run.csv();
    std::vector<std::string> head{"N", "switch_transmission", "rate_hz"};
    if (mc) {
        head.insert(head.end(), {"mc_rate_hz", "mc_stderr_hz"});
    }
    w.row(head);
    for (size_t i = 0; i < rows.size(); i++) {
        std::vector<std::string> f{std::to_string(rows[i].channels), ps::sci(rows[i].switch_transmission),
                                   ps::sci(rows[i].rate_hz)};
        if (mc) {
            f.push_back(ps::sci(mcs[i].rate));
            f.push_back(ps::sci(mcs[i].stderr_rate));
        }
        w.row(f);
    }
    run.emit(w.str());
}

// herald -------------------------------------------------------------------

struct HeraldArgs {
    std::string which = "bell";
    double v = 1;
    double eta = 1;
    std::string convention = "hom_visibility";
};

void emit_report(const Run &run, const std::vector<std::pair<std::string, double>> &scalars,
                 const std::vector<std::string> &stabilizers, const std::vector<double> &expectations,
                 const json &extra = json::object()) {
    if (run.format == "json") {
        json j = run.header();
        for (const auto &[k, v] : scalars) {
            j[k] = v;
        }
        j["stabilizers"] = stabilizers;
        j["stabilizer_expectations"] = expectations;
        for (const auto &[k, v] : extra.items()) {
            j[k] = v;
        }
        run.emit(j);
        return;
    }
    auto w = run.csv();
    w.row({"quantity", "value"});
    for (const auto &[k, v] : scalars) {
        w.row({k, ps::sci(v)});
    }
    for (size_t i = 0; i < stabilizers.size(); i++) {
        w.row({"stabilizer " + stabilizers[i], ps::sci(expectations[i])});
    }
    run.emit(w.str());
}

void cmd_herald(const HeraldArgs &a, Run &run) {
    if (a.which != "bell" && a.which != "ghz") {
        throw ps::DomainError("unknown circuit '" + a.which + "', expected bell or ghz");
    }
    run.param("circuit", a.which);
    run.param("V", a.v);
    run.param("eta", a.eta);
    run.param("convention", a.convention);
    auto c = a.which == "bell" ? ps::heralded_bell_circuit() : ps::heralded_ghz_circuit();
    const int n = c.input.photons();
    auto model = ps::DistinguishabilityModel::uniform(a.v, n, parse_convention(a.convention));
    std::optional<ps::LossChannel> loss;
    if (a.eta != 1) {
        loss = ps::LossChannel::uniform(a.eta, c.u.modes());
    }
    auto r = ps::simulate_heralded(c, model, loss);
    auto stabs = ps::StabilizerSet::ghz(c.qubits());
    std::vector<std::string> names;
    for (const auto &g : stabs.generators()) {
        names.push_back(g.str());
    }
    std::vector<double> expect;
    if (r.state) {
        expect = ps::stabilizer_expectations(*r.state, stabs);
    }
    const double per_photon = r.heralded ? 1 - std::pow(r.fidelity, 1.0 / c.qubits()) : 1.0;
    emit_report(run,
                {{"p_herald", r.p_herald},
                 {"p_encoded", r.p_encoded},
                 {"fidelity", r.fidelity},
                 {"per_photon_infidelity", per_photon}},
                r.state ? names : std::vector<std::string>{}, expect,
                json{{"pattern_probability", r.pattern_probability}});
}

// cluster ------------------------------------------------------------------

struct ClusterArgs {
    int n = 3;
    double spin_dephasing = 0;
    double photon_dephasing = 0;
    double rotation_error = 0;
    double loss = 0;
    int trajectories = 2000;
    bool keep_spin = false;
};

void cmd_cluster(const ClusterArgs &a, Run &run) {
    ps::ClusterNoise noise;
    noise.photon_loss = a.loss;
    noise.spin_dephasing_rate = a.spin_dephasing;
    noise.photon_dephasing = a.photon_dephasing;
    noise.rotation_error = a.rotation_error;
    noise.validate();
    const uint64_t seed = noise.noiseless() ? run.seed.value_or(0) : run.require_seed();
    run.param("n", a.n);
    run.param("spin_dephasing", a.spin_dephasing);
    run.param("photon_dephasing", a.photon_dephasing);
    run.param("rotation_error", a.rotation_error);
    run.param("loss", a.loss);
    run.param("trajectories", a.trajectories);
    run.param("keep_spin", a.keep_spin ? "true" : "false");
    ps::Rng rng(seed);
    ps::ClusterOptions opt;
    opt.keep_spin = a.keep_spin;
    opt.trajectories = a.trajectories;
    auto r = ps::timebin_cluster(a.n, noise, rng, opt);
    std::vector<std::string> names;
    for (const auto &g : r.stabilizers.generators()) {
        names.push_back(g.str());
    }
    emit_report(run,
                {{"p_herald", r.success_probability},
                 {"fidelity", r.fidelity},
                 {"per_photon_infidelity", r.per_photon_infidelity}},
                names, r.expectations, json{{"trajectories", r.trajectories}});
}

// sample -------------------------------------------------------------------

struct SampleArgs {
    std::string input;
    int shots = 1000;
};

void cmd_sample(const SampleArgs &a, Run &run) {
    const uint64_t seed = run.require_seed();
    auto input = ps::FockState::parse(a.input);
    if (a.shots < 0) {
        throw ps::DomainError("--shots must be non-negative");
    }
    run.param("input", input.str());
    run.param("shots", a.shots);
    ps::Rng base(seed);
    ps::Rng urng = base.split(0);
    ps::Rng srng = base.split(1);
    auto u = ps::haar_random_unitary(input.modes(), urng);
    auto dist = ps::output_distribution(u, input);
    auto shots = ps::sample_outputs(u, input, srng, static_cast<size_t>(a.shots));
    std::map<ps::FockState, int> counts;
    for (const auto &s : shots) {
        counts[s]++;
    }
    if (run.format == "json") {
        json j = run.header();
        j["unitary"] = complex_matrix(u.matrix());
        json arr = json::array();
        for (const auto &[o, p] : dist) {
            const int c = counts.count(o) ? counts.at(o) : 0;
            arr.push_back(json{{"occupation", o.str()}, {"count", c}, {"probability", p}});
        }
        j["outcomes"] = arr;
        run.emit(j);
        return;
    }
    auto w = run.csv();
    w.row({"occupation", "count", "frequency", "probability"});
    for (const auto &[o, p] : dist) {
        const int c = counts.count(o) ? counts.at(o) : 0;
        const double f = a.shots ? static_cast<double>(c) / a.shots : 0.0;
        w.row({o.str(), std::to_string(c), ps::sci(f), ps::sci(p)});
    }
    run.emit(w.str());
}

// decompose / compose ------------------------------------------------------

struct DecomposeArgs {
    int m = 4;
};

void cmd_decompose(const DecomposeArgs &a, Run &run) {
    const uint64_t seed = run.require_seed();
    if (a.m < 1) {
        throw ps::DomainError("--m must be positive");
    }
    ps::check_cap(a.m, ps::default_caps().max_modes, "mode count", "PHOTONSIM_MAX_MODES");
    run.param("m", a.m);
    auto u = ps::haar_random_unitary(a.m, seed);
    auto mesh = ps::clements_decompose(u);
    if (run.format == "json") {
        json j = run.header();
        j["modes"] = mesh.modes;
        j["unitary"] = complex_matrix(u.matrix());
        json cells = json::array();
        for (const auto &c : mesh.cells) {
            cells.push_back(json{{"mode", c.mode}, {"theta", c.theta}, {"phi", c.phi}});
        }
        j["cells"] = cells;
        j["output_phases"] = mesh.output_phases;
        run.emit(j);
        return;
    }
    auto w = run.csv();
    w.row({"kind", "mode", "theta", "phi"});
    for (const auto &c : mesh.cells) {
        w.row({"cell", std::to_string(c.mode), ps::sci(c.theta), ps::sci(c.phi)});
    }
    for (size_t k = 0; k < mesh.output_phases.size(); k++) {
        w.row({"output_phase", std::to_string(k), "", ps::sci(mesh.output_phases[k])});
    }
    run.emit(w.str());
}

struct ComposeArgs {
    std::string in;
};

void cmd_compose(const ComposeArgs &a, Run &run) {
    std::ifstream f(a.in);
    if (!f) {
        throw ps::DomainError("cannot read mesh file '" + a.in + "'");
    }
    json j;
    ps::MeshParams mesh;
    try {
        j = json::parse(f);
        mesh.modes = j.at("modes").get<int>();
        for (const auto &c : j.at("cells")) {
            mesh.cells.push_back({c.at("mode").get<int>(), c.at("theta").get<double>(), c.at("phi").get<double>()});
        }
        mesh.output_phases = j.at("output_phases").get<std::vector<double>>();
    } catch (const json::exception &e) {
        throw ps::DomainError(std::string("bad mesh file: ") + e.what());
    }
    run.param("in", a.in);
    auto u = ps::mesh_compose(mesh);
    std::optional<double> residual;
    if (j.contains("unitary")) {
        ps::CMatrix ref;
        try {
            ref = complex_matrix(j.at("unitary"));
        } catch (const json::exception &e) {
            throw ps::DomainError(std::string("bad unitary in mesh file: ") + e.what());
        }
        if (ref.rows() != u.modes()) {
            throw ps::ShapeError("embedded unitary does not match the mesh size");
        }
        residual = (u.matrix() - ref).cwiseAbs().maxCoeff();
    }
    if (run.format == "json") {
        json out = run.header();
        out["modes"] = u.modes();
        out["unitary"] = complex_matrix(u.matrix());
        out["round_trip_residual"] = residual ? json(*residual) : json(nullptr);
        run.emit(out);
        return;
    }
    auto w = run.csv();
    if (residual) {
        w.comment("round_trip_residual = " + ps::sci(*residual));
    }
    w.row({"row", "col", "real", "imag"});
    for (int r = 0; r < u.modes(); r++) {
        for (int c = 0; c < u.modes(); c++) {
            w.row({std::to_string(r), std::to_string(c), ps::sci(u.matrix()(r, c).real()),
                   ps::sci(u.matrix()(r, c).imag())});
        }
    }
    run.emit(w.str());
}

// Name of the subcommand on the command line, used as the config section.
std::string subcommand_of(int argc, char **argv, const std::vector<std::string> &names) {
    for (int i = 1; i < argc; i++) {
        for (const auto &n : names) {
            if (n == argv[i]) {
                return n;
            }
        }
    }
    return "";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulator for single-photon sources, linear optics and photonic entanglement protocols"};
    app.set_version_flag("--version", std::string("photonsim ") + ps::kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    auto config = std::make_shared<FlatConfig>();
    app.config_formatter(config);
    app.set_config("--config", "", "Flat TOML or JSON file of subcommand options (flags win)");
    app.allow_config_extras(CLI::config_extras_mode::error);
    const std::vector<std::string> conventions{"hom_visibility", "overlap"};

    Run hom_run, delta_run, demux_run, herald_run, ghz_run, cluster_run, sample_run, decompose_run, compose_run;

    HomArgs hom;
    auto *hom_cmd = add_command(app, "hom", "Two-photon HOM coincidence: closed form and Fock simulation", hom_run, "csv");
    hom_cmd->add_option("--v", hom.v, "Pairwise HOM visibility V")->required();

    DeltaArgs delta;
    auto *delta_cmd = add_command(app, "delta", "TV distance of the partially distinguishable sampler", delta_run, "csv");
    delta_cmd->add_option("--v", delta.v, "Indistinguishability V")->required();
    delta_cmd->add_option("--n", delta.n, "Photon numbers, e.g. 2..4 or 2,3")->capture_default_str();
    delta_cmd->add_option("--seeds", delta.seeds, "Haar unitaries per N, seeded seed, seed+1, ...")->capture_default_str();
    delta_cmd->add_option("--ref", delta.ref, "Reference sampler")->check(CLI::IsMember({"ideal", "distinguishable", "both"}));
    delta_cmd->add_option("--modes", delta.modes, "Mode count, 0 for N^2");
    delta_cmd->add_option("--convention", delta.convention, "Meaning of V")->check(CLI::IsMember(conventions));

    DemuxArgs demux;
    auto *demux_cmd = add_command(app, "demux", "N-photon rate behind an active demultiplexer", demux_run, "csv");
    demux_cmd->add_option("--n", demux.n, "Channel counts (powers of two)")->capture_default_str();
    demux_cmd->add_option("--switch", demux.switches, "Switch transmissions")->capture_default_str();
    demux_cmd->add_option("--efficiency", demux.efficiency, "Source end-to-end efficiency")->capture_default_str();
    demux_cmd->add_option("--rate", demux.rate, "Repetition rate, Hz")->capture_default_str();
    demux_cmd->add_option("--external", demux.external, "Fiber and mode-matching efficiency")->capture_default_str();
    demux_cmd->add_option("--g2", demux.g2, "Second-order correlation g2(0)")->capture_default_str();
    demux_cmd->add_option("--blocks", demux.blocks, "Monte Carlo blocks per row, 0 to skip");

    HeraldArgs herald;
    auto *herald_cmd = add_command(app, "herald", "Heralded Bell or GHZ source with imperfect photons", herald_run, "json");
    herald_cmd->add_option("circuit", herald.which, "bell or ghz")->required()->check(CLI::IsMember({"bell", "ghz"}));
    HeraldArgs ghz;
    ghz.which = "ghz";
    auto *ghz_cmd = add_command(app, "ghz", "Alias for 'herald ghz'", ghz_run, "json");
    for (auto [cmd, args] : {std::pair{herald_cmd, &herald}, std::pair{ghz_cmd, &ghz}}) {
        cmd->add_option("--v", args->v, "Pairwise indistinguishability V")->capture_default_str();
        cmd->add_option("--eta", args->eta, "Transmissivity of every mode")->capture_default_str();
        cmd->add_option("--convention", args->convention, "Meaning of V")->check(CLI::IsMember(conventions));
    }

    ClusterArgs cluster;
    auto *cluster_cmd = add_command(app, "cluster", "Time-bin linear cluster from a spin emitter", cluster_run, "json");
    cluster_cmd->add_option("--n", cluster.n, "Photon number")->capture_default_str();
    cluster_cmd->add_option("--spin-dephasing", cluster.spin_dephasing, "Spin dephasing per cycle, gamma * interval");
    cluster_cmd->add_option("--photon-dephasing", cluster.photon_dephasing, "Z-error probability per photon");
    cluster_cmd->add_option("--rotation-error", cluster.rotation_error, "Spin rotation angle spread, rad");
    cluster_cmd->add_option("--loss", cluster.loss, "Photon loss probability");
    cluster_cmd->add_option("--trajectories", cluster.trajectories, "Noise trajectories")->capture_default_str();
    cluster_cmd->add_flag("--keep-spin", cluster.keep_spin, "Keep the spin as the last cluster qubit");

    SampleArgs sample;
    auto *sample_cmd = add_command(app, "sample", "Sample a seeded Haar interferometer", sample_run, "csv");
    sample_cmd->add_option("--input", sample.input, "Input occupations, e.g. 1,1,0,0")->required();
    sample_cmd->add_option("--shots", sample.shots, "Number of samples")->capture_default_str();

    DecomposeArgs decompose;
    auto *decompose_cmd =
        add_command(app, "decompose", "Rectangular MZI mesh of a seeded Haar unitary", decompose_run, "json");
    decompose_cmd->add_option("--m", decompose.m, "Mode count")->required();

    ComposeArgs compose;
    auto *compose_cmd = add_command(app, "compose", "Rebuild the unitary from a decompose file", compose_run, "json");
    compose_cmd->add_option("--in", compose.in, "Mesh JSON written by decompose")->required();

    config->section = subcommand_of(argc, argv,
                                    {"hom", "delta", "demux", "herald", "ghz", "cluster", "sample", "decompose", "compose"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const ps::DomainError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }

    try {
        if (hom_cmd->parsed()) {
            cmd_hom(hom, hom_run);
        } else if (delta_cmd->parsed()) {
            cmd_delta(delta, delta_run);
        } else if (demux_cmd->parsed()) {
            cmd_demux(demux, demux_run);
        } else if (herald_cmd->parsed()) {
            cmd_herald(herald, herald_run);
        } else if (ghz_cmd->parsed()) {
            cmd_herald(ghz, ghz_run);
        } else if (cluster_cmd->parsed()) {
            cmd_cluster(cluster, cluster_run);
        } else if (sample_cmd->parsed()) {
            cmd_sample(sample, sample_run);
        } else if (decompose_cmd->parsed()) {
            cmd_decompose(decompose, decompose_run);
        } else if (compose_cmd->parsed()) {
            cmd_compose(compose, compose_run);
        }
    } catch (const ps::ResourceLimitError &e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const ps::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::logic_error &e) {
        // ShapeError, DomainError and other invalid input.
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
