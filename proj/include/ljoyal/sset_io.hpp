#pragma once

#include <string>

#include "json.hpp"
#include "ljoyal/fp_category.hpp"
#include "ljoyal/simplicial_map.hpp"

namespace ljoyal {

using ojson = nlohmann::ordered_json;

/// {"degens": [j1 > ... > jk], "base": id}
ojson formal_to_json(const SimplicialSet& x, const Simplex& s);
/// Reads a formal simplex of dimension `dim`; throws BadNormalForm or DanglingFace.
Simplex formal_from_json(const SimplicialSet& x, int dim, const nlohmann::json& j);

/// {"dim_cap", "coskeletal_above", ["finite_dim",] "cells": {"0": [ids], "1": [{"id", "faces"}], ...}}
ojson sset_to_json(const SimplicialSet& x);
/// Validates everything, including coskeletality when flagged.
SSetPtr sset_from_json(const nlohmann::json& j);

/// {"0": {source id: formal target simplex}, ...}
ojson map_to_json(const SimplicialMap& f);
/// Reads and validates a map table (NotSimplicial if faces do not commute).
SimplicialMap map_from_json(const SSetPtr& source, const SSetPtr& target, const nlohmann::json& j);

/// {"objects", "generators": [{"id", "src", "tgt"[, "inverse"]}], "relations": [[lhs ids], [rhs ids]]}
ojson presentation_to_json(const FpCategory& c);
/// Does not run completion.
FpCategory presentation_from_json(const nlohmann::json& j);

/// Canonical text form: two-space indentation and a trailing newline.
std::string dump(const ojson& j);
nlohmann::json read_json_file(const std::string& path);

} // namespace ljoyal
