#include "toric/corpus.hpp"

#include <cstdlib>
#include <stdexcept>

#ifndef TORIC_CORPUS_DIR
#define TORIC_CORPUS_DIR "corpus"
#endif

namespace toric {

Fan hirzebruch(int a) { return Fan{2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}}; }

namespace {

// Cones over the faces of the cube [-1,1]^3 with the vertex (1,1,1) pulled
// out to (1,2,3). Ray i has coordinate signs given by the bits of i.
Fan perturbed_cube() {
  Fan f;
  f.rank = 3;
  for (int i = 0; i < 8; ++i) {
    IntVector v{(i & 4) ? 1 : -1, (i & 2) ? 1 : -1, (i & 1) ? 1 : -1};
    if (i == 7) v = {1, 2, 3};
    f.rays.push_back(v);
  }
  for (int axis = 0; axis < 3; ++axis)
    for (int side = 0; side < 2; ++side) {
      RaySet s;
      const int bit = 4 >> axis;
      for (int i = 0; i < 8; ++i)
        if (((i & bit) != 0) == (side == 1)) s.push_back(i);
      f.max_cones.push_back(s);
    }
  return f;
}

}  // namespace

std::vector<std::string> builtin_fan_names() {
  return {"a1", "p1", "p2", "p1xp1", "wp112", "nondivisorial3", "hirzebruch_<a>"};
}

bool is_builtin_fan(const std::string& name) {
  if (name.rfind("hirzebruch_", 0) == 0) {
    const std::string tail = name.substr(11);
    if (tail.empty()) return false;
    std::size_t start = tail[0] == '-' ? 1 : 0;
    if (start == tail.size()) return false;
    for (std::size_t i = start; i < tail.size(); ++i)
      if (tail[i] < '0' || tail[i] > '9') return false;
    return tail.size() < 6;
  }
  for (const auto& n : builtin_fan_names())
    if (n == name) return true;
  return false;
}

Fan builtin_fan(const std::string& name) {
  if (name == "a1") return Fan{1, {{1}}, {{0}}};
  if (name == "p1") return Fan{1, {{1}, {-1}}, {{0}, {1}}};
  if (name == "p2") return Fan{2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}};
  if (name == "p1xp1") return Fan{2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
  if (name == "wp112") return Fan{2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}}};
  if (name == "nondivisorial3") return perturbed_cube();
  if (name.rfind("hirzebruch_", 0) == 0 && is_builtin_fan(name)) return hirzebruch(std::stoi(name.substr(11)));
  throw std::invalid_argument("unknown corpus fan: " + name);
}

bool is_builtin_presentation(const std::string& name) { return name == "doubled_line"; }

QuotientPresentation builtin_presentation(const std::string& name) {
  if (name != "doubled_line") throw std::invalid_argument("unknown corpus presentation: " + name);
  QuotientPresentation qp;
  qp.n = 2;
  qp.group = FinAbGroup{1, {}};
  qp.degrees = {{1}, {-1}};
  qp.q = IntMatrix(1, 2, {1, 1});
  qp.cones = {{0}, {1}};
  return qp;
}

std::string corpus_dir() {
  if (const char* env = std::getenv("TORIC_CORPUS")) return env;
  return TORIC_CORPUS_DIR;
}

}  // namespace toric
