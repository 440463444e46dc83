#pragma once

#include <string>

#include "json.hpp"
#include "tracelab/cyclotomic.hpp"
#include "tracelab/trace_datum.hpp"

namespace tracelab {

using ordered_json = nlohmann::ordered_json;

// CycNum <-> {"N": int, "num": [int...], "den": [int...]} with coefficients in
// degree order.  Values that do not fit in 64 bits are emitted as decimal
// strings (accepted back on input).
ordered_json cyc_to_json(const CycNum& v);
CycNum cyc_from_json(const ordered_json& j);

// TraceDatum <-> {"schema": ..., "space": d, "q": "p^n", "levels":
// {"m": [[point, cycnum], ...]}} with a point given as the list of its
// coordinates' coefficient vectors.
ordered_json datum_to_json(const TraceDatum& d);
TraceDatum datum_from_json(const FFTower& tower, const ordered_json& j);

// CSV table: level, point index, coordinates, value (display form).
std::string datum_to_csv(const TraceDatum& d);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace tracelab
