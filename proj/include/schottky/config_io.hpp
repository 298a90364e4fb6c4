#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "schottky/schottky_set.hpp"

namespace schottky {

// On-disk configuration. Caps may be given sphere-native
// ({"normal": [...], "offset": t}) or as chart balls
// ({"center": [...], "radius": r}); both parse to sphere-native caps.
struct ConfigDocument {
  int dimension = 2;
  bool chart_stereographic = true;
  std::vector<Cap> caps;
  std::uint64_t seed = 0;
  std::map<std::string, long long> budgets;
};

// ParseError with a field-precise message.
ConfigDocument parse_config(const std::string& text);
ConfigDocument load_config_file(const std::string& path);

// Canonical form: sphere-native caps, 17 significant digits, sorted keys.
// emit(parse(emit(x))) is byte-identical to emit(x).
std::string emit_canonical(const ConfigDocument& doc);

SchottkySet schottky_from_config(const ConfigDocument& doc);
ConfigDocument config_from_schottky(const SchottkySet& s, std::uint64_t seed = 0);

}  // namespace schottky
