#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "smo/catalog.hpp"
#include "smo/rankin_selberg.hpp"

namespace smo {

/// {"kind": "gl1"|"gl2", "modulus": int, "index": int, "weight": int, "label": string}.
/// Fields that do not apply to the kind are omitted on output and ignored on input.
nlohmann::json spec_to_json(const RepresentationSpec& spec);
RepresentationSpec spec_from_json(const nlohmann::json& j);

/// Accepts inline JSON (first non-blank character '{') or a path to a JSON file.
RepresentationSpec load_spec(const std::string& path_or_json);

/// printf %.15g.
std::string format_number(double value);

/// Header line "# degree_a=..,degree_b=..,label_a=..,label_b=..,n_max=.." followed by
/// the column row "n,re,im,ramified" and one row per n in [1, n_max].
void write_series_csv(std::ostream& out, const RSCoefficientSeries& series);
RSCoefficientSeries read_series_csv(std::istream& in);

}  // namespace smo
