#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "harper/fourier.hpp"
#include "harper/gaps.hpp"
#include "harper/localization.hpp"

namespace harper {

/// Ordered key=value echo of a run configuration; emitted verbatim into output headers so
/// every file names the parameters that produced it.
struct Provenance {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
    void add(const std::string& key, double value);
    void add(const std::string& key, long long value);
};

/// Shortest round-trippable decimal form of x (emitted consistently everywhere so equal
/// configurations give byte-identical files).
std::string format_double(double x);

void write_gap_csv(std::ostream& os, const std::vector<Gap>& gaps, const Provenance& prov);
std::vector<Gap> read_gap_csv(std::istream& is);

void write_grid(std::ostream& os, const ButterflyGrid& grid, const Provenance& prov);
ButterflyGrid read_grid(std::istream& is);

void write_eigenpair_csv(std::ostream& os, const std::vector<EigenPair>& pairs,
                         const Provenance& prov);

/// One JSON object per line; `fields` are pre-rendered key/value pairs (values already
/// JSON-encoded), written in order.
void write_json_record(std::ostream& os,
                       const std::vector<std::pair<std::string, std::string>>& fields);

std::string json_quote(const std::string& s);

/// Torus-map coefficient dump: one JSON record per named entry with the truncation order,
/// the fitted analyticity width, and the coefficient list for m = -M..M.
void write_torus_map_entry(std::ostream& os, const std::string& name, const FourierSeries& f);
FourierSeries read_torus_map_entry(const std::string& line, std::string* name_out = nullptr);

}  // namespace harper
