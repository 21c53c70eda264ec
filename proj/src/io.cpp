#include "toric/io.hpp"

#include <fstream>
#include <sstream>

namespace toric {

ParseError::ParseError(const std::string& w, const std::string& what)
    : std::runtime_error(w.empty() ? what : w + ": " + what), where(w) {}

namespace {

void dump(const Json& j, std::size_t indent, std::string& out) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += inner + Json(it.key()).dump() + ": ";
      dump(it.value(), indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += inner;
      dump(j[i], indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else {
    out += j.dump();
  }
}

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

Json vectors_json(const std::vector<IntVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vector_json(v));
  return a;
}

Json set_json(const RaySet& s) {
  Json a = Json::array();
  for (auto i : s) a.push_back(i);
  return a;
}

Json sets_json(const std::vector<RaySet>& ss) {
  Json a = Json::array();
  for (const auto& s : ss) a.push_back(set_json(s));
  return a;
}

Json matrix_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    IntVector row(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    a.push_back(vector_json(row));
  }
  return a;
}

Json group_json(const FinAbGroup& g) {
  Json j;
  j["free_rank"] = g.free_rank;
  j["torsion"] = vector_json(g.torsion);
  return j;
}

/// A JSON value together with its pointer, for schema error messages.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_.empty() ? "/" : path_, what); }

  const Json& raw() const { return j_; }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

  Node operator[](const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    if (!j_.contains(key)) fail("missing field \"" + key + "\"");
    return Node(j_.at(key), path_ + "/" + key);
  }
  Node operator[](std::size_t i) const { return Node(j_.at(i), path_ + "/" + std::to_string(i)); }

  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }

  Integer integer() const {
    if (j_.is_number_integer()) return j_.is_number_unsigned() ? Integer(std::to_string(j_.get<std::uint64_t>()))
                                                                : Integer(std::to_string(j_.get<std::int64_t>()));
    if (j_.is_string()) {
      Integer x;
      const std::string s = j_.get<std::string>();
      if (!s.empty() && x.set_str(s, 10) == 0) return x;
    }
    fail("expected an integer");
  }

  std::size_t index() const {
    if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<std::int64_t>() >= 0))
      fail("expected a nonnegative integer");
    return j_.get<std::size_t>();
  }

  bool boolean() const {
    if (!j_.is_boolean()) fail("expected true or false");
    return j_.get<bool>();
  }

  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  IntVector vector() const {
    IntVector out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].integer());
    return out;
  }

  std::vector<IntVector> vectors() const {
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].vector());
    return out;
  }

  RaySet set() const {
    RaySet out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].index());
    return out;
  }

  std::vector<RaySet> sets() const {
    std::vector<RaySet> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].set());
    return out;
  }

  IntMatrix matrix(std::size_t cols) const {
    const auto rows = vectors();
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].size() != cols) (*this)[i].fail("expected " + std::to_string(cols) + " entries");
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  FinAbGroup group() const {
    FinAbGroup g;
    g.free_rank = (*this)["free_rank"].index();
    g.torsion = (*this)["torsion"].vector();
    for (std::size_t i = 0; i < g.torsion.size(); ++i)
      if (g.torsion[i] < 2) (*this)["torsion"][i].fail("torsion orders must be at least 2");
    return g;
  }

  void expect_kind(const std::string& kind) const {
    const std::string k = (*this)["kind"].string();
    if (k != kind) (*this)["kind"].fail("expected kind \"" + kind + "\", found \"" + k + "\"");
  }

 private:
  const Json& j_;
  std::string path_;
};

Fan fan_from_node(const Node& n) {
  n.expect_kind("fan");
  Fan f;
  f.rank = n["rank"].index();
  f.rays = n["rays"].vectors();
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (f.rays[i].size() != f.rank) n["rays"][i].fail("ray has " + std::to_string(f.rays[i].size()) +
                                                      " entries, rank is " + std::to_string(f.rank));
  f.max_cones = n["max_cones"].sets();
  if (auto v = validate_fan(f)) n.fail("invalid fan: " + v->message);
  return f;
}

CartierData cartier_from_node(const Node& n) {
  return CartierData{n["coefficients"].vector(), n["local"].vectors()};
}

QuotientPresentation presentation_from_node(const Node& n) {
  n.expect_kind("presentation");
  QuotientPresentation qp;
  qp.n = n["n"].index();
  qp.group = n["group"].group();
  qp.degrees = n["degrees"].vectors();
  qp.q = n["q"].matrix(qp.n);
  qp.cones = n["cones"].sets();
  if (auto e = validate_presentation(qp)) n.fail("invalid presentation: " + *e);
  return qp;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, 0, out);
  return out + "\n";
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    const auto pos = what.find("syntax error");
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col),
                     pos == std::string::npos ? what : what.substr(pos));
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ", " + e.where, std::string(e.what()).substr(e.where.size() + 2));
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string kind_of(const Json& j) { return Node(j, "")["kind"].string(); }

Json to_json(const Fan& f) {
  Json j;
  j["kind"] = "fan";
  j["rank"] = f.rank;
  j["rays"] = vectors_json(f.rays);
  j["max_cones"] = sets_json(f.max_cones);
  return j;
}

Fan fan_from_json(const Json& j) { return fan_from_node(Node(j, "")); }
Fan parse_fan(const std::string& text) { return fan_from_json(parse_json_text(text)); }
std::string serialize(const Fan& f) { return canonical_dump(to_json(f)); }

Json to_json(const QuotientPresentation& qp) {
  Json j;
  j["kind"] = "presentation";
  j["n"] = qp.n;
  j["group"] = group_json(qp.group);
  j["degrees"] = vectors_json(qp.degrees);
  j["q"] = matrix_json(qp.q);
  j["cones"] = sets_json(qp.cones);
  return j;
}

QuotientPresentation presentation_from_json(const Json& j) { return presentation_from_node(Node(j, "")); }

DivisorFile divisor_from_json(const Json& j, const std::function<Fan(const std::string&)>& resolve) {
  const Node n(j, "");
  n.expect_kind("divisor");
  DivisorFile d;
  const Node fan = n["fan"];
  d.fan = fan.raw().is_string() ? resolve(fan.string()) : fan_from_node(fan);
  d.coeffs = n["coefficients"].vector();
  if (d.coeffs.size() != d.fan.rays.size())
    n["coefficients"].fail("expected one coefficient per ray (" + std::to_string(d.fan.rays.size()) + ")");
  return d;
}

Json to_json(const Fan& f, const IntVector& coeffs) {
  Json j;
  j["kind"] = "divisor";
  j["fan"] = to_json(f);
  j["coefficients"] = vector_json(coeffs);
  return j;
}

Json certificates_to_json(const Fan& f, const std::vector<DivisorialCertificate>& certs) {
  Json j;
  j["kind"] = "divisorial_certificates";
  j["fan"] = to_json(f);
  Json list = Json::array();
  for (const auto& c : certs) {
    Json e;
    e["cone"] = c.cone;
    e["rays"] = set_json(c.rays);
    e["coefficients"] = vector_json(c.divisor.coeffs);
    e["local"] = vectors_json(c.divisor.local);
    list.push_back(e);
  }
  j["certificates"] = list;
  return j;
}

std::vector<DivisorialCertificate> certificates_from_json(const Json& j, Fan& fan) {
  const Node n(j, "");
  n.expect_kind("divisorial_certificates");
  fan = fan_from_node(n["fan"]);
  std::vector<DivisorialCertificate> out;
  const Node list = n["certificates"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Node e = list[i];
    DivisorialCertificate c;
    c.cone = e["cone"].index();
    c.rays = e["rays"].set();
    c.divisor = cartier_from_node(e);
    out.push_back(c);
  }
  return out;
}

Json sections_to_json(const Fan& f, std::size_t k, const std::vector<SectionCertificate>& certs) {
  Json j;
  j["kind"] = "section_certificates";
  j["fan"] = to_json(f);
  j["k"] = k;
  Json list = Json::array();
  for (const auto& c : certs) {
    Json e;
    e["coefficients"] = vector_json(c.coeffs);
    e["support"] = vectors_json(c.support);
    e["covered"] = set_json(c.covered);
    list.push_back(e);
  }
  j["sections"] = list;
  return j;
}

std::vector<SectionCertificate> sections_from_json(const Json& j, Fan& fan, std::size_t& k) {
  const Node n(j, "");
  n.expect_kind("section_certificates");
  fan = fan_from_node(n["fan"]);
  k = n["k"].index();
  std::vector<SectionCertificate> out;
  const Node list = n["sections"];
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back({list[i]["coefficients"].vector(), list[i]["support"].vectors(), list[i]["covered"].set()});
  return out;
}

Json to_json(const EmbeddingArtifact& art) {
  Json j;
  j["kind"] = "embedding";
  j["source"] = to_json(art.source);
  j["k"] = art.k;
  j["bound"] = art.bound;
  j["lambda_basis"] = vectors_json(art.lambda_basis);
  j["generators"] = vectors_json(art.generators);
  j["ambient"] = to_json(art.ambient);
  j["separated"] = art.separated;
  j["smooth"] = art.smooth;
  j["maximal_among_explored"] = art.maximal_among_explored;
  Json charts = Json::array();
  for (const auto& c : art.charts) {
    Json e;
    e["source_cone"] = set_json(c.source_cone);
    e["ambient_chart"] = set_json(c.ambient_chart);
    Json lifts = Json::array();
    for (const auto& [h, x] : c.lifts) {
      Json l;
      l["h"] = vector_json(h);
      l["exponents"] = vector_json(x);
      lifts.push_back(l);
    }
    e["lifts"] = lifts;
    charts.push_back(e);
  }
  j["charts"] = charts;
  j["transcript"] = art.transcript;
  return j;
}

EmbeddingArtifact artifact_from_json(const Json& j) {
  const Node n(j, "");
  n.expect_kind("embedding");
  EmbeddingArtifact art;
  art.source = fan_from_node(n["source"]);
  art.k = n["k"].index();
  art.bound = n["bound"].index();
  art.lambda_basis = n["lambda_basis"].vectors();
  art.generators = n["generators"].vectors();
  art.ambient = presentation_from_node(n["ambient"]);
  art.separated = n["separated"].boolean();
  art.smooth = n["smooth"].boolean();
  art.maximal_among_explored = n["maximal_among_explored"].boolean();
  for (std::size_t i = 0; i < art.lambda_basis.size(); ++i)
    if (art.lambda_basis[i].size() != art.source.rays.size()) n["lambda_basis"][i].fail("expected one entry per ray");
  for (std::size_t i = 0; i < art.generators.size(); ++i)
    if (art.generators[i].size() != art.source.rank + art.lambda_basis.size())
      n["generators"][i].fail("expected rank + lambda rank entries");
  const Node charts = n["charts"];
  for (std::size_t i = 0; i < charts.size(); ++i) {
    ChartRecord rec;
    rec.source_cone = charts[i]["source_cone"].set();
    rec.ambient_chart = charts[i]["ambient_chart"].set();
    const Node lifts = charts[i]["lifts"];
    for (std::size_t l = 0; l < lifts.size(); ++l)
      rec.lifts.emplace_back(lifts[l]["h"].vector(), lifts[l]["exponents"].vector());
    art.charts.push_back(rec);
  }
  const Node tr = n["transcript"];
  for (std::size_t i = 0; i < tr.size(); ++i) art.transcript.push_back(tr[i].string());
  return art;
}

Json to_json(const ConoidPresentation& cp) {
  Json j;
  j["kind"] = "conoid";
  j["presentation"] = cp.kind;
  j["grading"] = group_json(cp.grading);
  Json gens = Json::array();
  for (const auto& g : cp.generators) {
    Json e;
    e["exponent"] = vector_json(g.exponent);
    e["degree"] = vector_json(g.degree);
    gens.push_back(e);
  }
  j["generators"] = gens;
  Json rels = Json::array();
  for (const auto& r : cp.relations) {
    Json e;
    e["plus"] = vector_json(r.plus);
    e["minus"] = vector_json(r.minus);
    rels.push_back(e);
  }
  j["relations"] = rels;
  j["distinguished"] = vectors_json(cp.distinguished);
  j["cones"] = sets_json(cp.cones);
  j["irrelevant"] = vectors_json(cp.irrelevant);
  j["stabilizers"] = vector_json(cp.stabilizers);
  j["free"] = cp.free;
  j["characteristic_zero"] = cp.characteristic_zero;
  return j;
}

Json to_json(const FiniteSpace& space, const AkAnalysis& an) {
  auto members = [](PointSet s) {
    Json a = Json::array();
    for (std::size_t i = 0; s; ++i, s >>= 1)
      if (s & 1) a.push_back(i);
    return a;
  };
  Json j;
  j["kind"] = "akset_analysis";
  j["k"] = an.k;
  j["points"] = space.names;
  Json comps = Json::array();
  for (const auto& c : an.components) comps.push_back(c);
  j["components"] = comps;
  j["projections"] = an.projections;
  Json table = Json::array();
  for (const auto& [pattern, value] : an.xy_table) {
    Json e;
    Json met = Json::array();
    for (std::size_t d = 0; d < an.projections.size(); ++d)
      if (pattern >> d & 1) met.push_back(an.projections[d]);
    e["meets"] = met;
    e["value"] = members(value);
    table.push_back(e);
  }
  j["xy_table"] = table;
  Json maxes = Json::array();
  for (auto m : an.maximal) maxes.push_back(members(m));
  j["maximal"] = maxes;
  return j;
}

}  // namespace toric
