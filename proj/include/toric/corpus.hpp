// Named example fans and presentations.

#pragma once

#include <string>
#include <vector>

#include "toric/embed.hpp"

namespace toric {

/// Built-in fans: p1, a1, p2, p1xp1, wp112, nondivisorial3, hirzebruch_<a>.
bool is_builtin_fan(const std::string& name);
Fan builtin_fan(const std::string& name);
std::vector<std::string> builtin_fan_names();

Fan hirzebruch(int a);

/// Built-in presentations: doubled_line (the line with a doubled origin).
bool is_builtin_presentation(const std::string& name);
QuotientPresentation builtin_presentation(const std::string& name);

/// Directory holding the corpus files and manifest.json.
std::string corpus_dir();

}  // namespace toric
