#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace photonsim {

// Scientific notation with 9 significant digits. Negative zero prints as
// zero so golden files do not flip on rounding noise.
inline std::string sci(double x) {
    if (x == 0) {
        x = 0;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", x);
    return buf;
}

// Quotes a field when it holds a comma, quote or newline.
inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

class CsvWriter {
   public:
    // Lines starting with '#' before the header carry version, seed and
    // parameters.
    void comment(const std::string &text) { out_ << "# " << text << '\n'; }

    void row(const std::vector<std::string> &fields) {
        for (size_t i = 0; i < fields.size(); i++) {
            if (i) {
                out_ << ',';
            }
            out_ << csv_field(fields[i]);
        }
        out_ << '\n';
    }

    std::string str() const { return out_.str(); }

   private:
    std::ostringstream out_;
};

// Writes through a temporary file in the same directory and renames it in
// place, so readers never see a partial file.
inline void write_atomic(const std::filesystem::path &path, const std::string &content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        f << content;
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

}  // namespace photonsim
