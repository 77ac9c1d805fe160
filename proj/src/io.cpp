#include "harper/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace harper {

std::string format_double(double x) {
    char buf[40];
    // %.17g round-trips every double; prefer the shorter %.15g when it already does
    std::snprintf(buf, sizeof buf, "%.15g", x);
    if (std::strtod(buf, nullptr) != x) std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void Provenance::add(const std::string& key, double value) { add(key, format_double(value)); }
void Provenance::add(const std::string& key, long long value) { add(key, std::to_string(value)); }

namespace {

void write_provenance(std::ostream& os, const Provenance& prov) {
    if (prov.entries.empty()) return;
    os << "#";
    for (const auto& [k, v] : prov.entries) os << " " << k << "=" << v;
    os << "\n";
}

}  // namespace

void write_gap_csv(std::ostream& os, const std::vector<Gap>& gaps, const Provenance& prov) {
    write_provenance(os, prov);
    os << "k,left,right,width,ids_value,collapsed\n";
    for (const Gap& g : gaps) {
        os << g.k << "," << format_double(g.left) << "," << format_double(g.right) << ","
           << format_double(g.width()) << "," << format_double(g.ids_value) << ","
           << (g.collapsed ? "true" : "false") << "\n";
    }
}

std::vector<Gap> read_gap_csv(std::istream& is) {
    std::vector<Gap> gaps;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("k,", 0) != 0)
                throw std::runtime_error("gap csv: missing header row");
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string field;
        Gap g{};
        std::getline(ss, field, ',');
        g.k = std::stoll(field);
        std::getline(ss, field, ',');
        g.left = std::stod(field);
        std::getline(ss, field, ',');
        g.right = std::stod(field);
        std::getline(ss, field, ',');  // width, derived
        std::getline(ss, field, ',');
        g.ids_value = std::stod(field);
        std::getline(ss, field, ',');
        g.collapsed = (field == "true");
        gaps.push_back(g);
    }
    return gaps;
}

void write_grid(std::ostream& os, const ButterflyGrid& grid, const Provenance& prov) {
    write_provenance(os, prov);
    os << "# " << format_double(grid.a_min) << " " << format_double(grid.a_max) << " "
       << format_double(grid.b_min) << " " << format_double(grid.b_max) << " " << grid.na
       << " " << grid.nb << "\n";
    for (int ib = 0; ib < grid.nb; ++ib) {
        for (int ia = 0; ia < grid.na; ++ia) {
            if (ia) os << " ";
            os << format_double(grid.at(ib, ia));
        }
        os << "\n";
    }
}

ButterflyGrid read_grid(std::istream& is) {
    std::string line;
    ButterflyGrid g{};
    bool dims_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            double amin, amax, bmin, bmax;
            int na, nb;
            if (ss >> amin >> amax >> bmin >> bmax >> na >> nb) {
                g.a_min = amin; g.a_max = amax;
                g.b_min = bmin; g.b_max = bmax;
                g.na = na; g.nb = nb;
                dims_seen = true;
                g.values.reserve(static_cast<size_t>(na) * static_cast<size_t>(nb));
            }
            continue;
        }
        if (!dims_seen) throw std::runtime_error("grid: missing dimension header");
        std::istringstream ss(line);
        double v;
        while (ss >> v) g.values.push_back(v);
    }
    if (!dims_seen || g.values.size() != static_cast<size_t>(g.na) * static_cast<size_t>(g.nb))
        throw std::runtime_error("grid: dimension header does not match data");
    return g;
}

void write_eigenpair_csv(std::ostream& os, const std::vector<EigenPair>& pairs,
                         const Provenance& prov) {
    write_provenance(os, prov);
    os << "index,eigenvalue,beta,center\n";
    for (size_t i = 0; i < pairs.size(); ++i) {
        os << i << "," << format_double(pairs[i].a) << "," << format_double(pairs[i].beta)
           << "," << pairs[i].center << "\n";
    }
}

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    out += '"';
    return out;
}

void write_json_record(std::ostream& os,
                       const std::vector<std::pair<std::string, std::string>>& fields) {
    os << "{";
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ",";
        os << json_quote(fields[i].first) << ":" << fields[i].second;
    }
    os << "}\n";
}

void write_torus_map_entry(std::ostream& os, const std::string& name, const FourierSeries& f) {
    os << "{\"name\":" << json_quote(name) << ",\"M\":" << f.degree()
       << ",\"delta_estimate\":" << format_double(f.decay_width()) << ",\"coefficients\":[";
    for (int m = -f.degree(); m <= f.degree(); ++m) {
        if (m > -f.degree()) os << ",";
        os << "[" << format_double(f.coeff(m).real()) << "," << format_double(f.coeff(m).imag())
           << "]";
    }
    os << "]}\n";
}

FourierSeries read_torus_map_entry(const std::string& line, std::string* name_out) {
    auto find_field = [&](const std::string& key) {
        size_t p = line.find("\"" + key + "\":");
        if (p == std::string::npos) throw std::runtime_error("torus map record: missing " + key);
        return p + key.size() + 3;
    };
    if (name_out) {
        size_t p = find_field("name");
        size_t q = line.find('"', p + 1);
        *name_out = line.substr(p + 1, q - p - 1);
    }
    int M = std::atoi(line.c_str() + find_field("M"));
    FourierSeries f(M);
    size_t pos = find_field("coefficients");
    const char* c = line.c_str() + pos;
    for (int m = -M; m <= M; ++m) {
        while (*c && *c != '[') ++c;
        if (!*c) throw std::runtime_error("torus map record: truncated coefficient list");
        ++c;
        char* end;
        double re = std::strtod(c, &end);
        c = end;
        while (*c == ',' || *c == ' ') ++c;
        double im = std::strtod(c, &end);
        c = end;
        while (*c && *c != ']') ++c;
        if (*c) ++c;
        f.set_coeff(m, {re, im});
    }
    return f;
}

}  // namespace harper
