// toric: command-line front end for the toric library.
//
// Exit codes: 0 success / YES, 1 NO or violation, 2 UNKNOWN or bound
// exhausted, 3 input error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "toric/akset.hpp"
#include "toric/corpus.hpp"
#include "toric/io.hpp"
#include "toric/parallel.hpp"

using namespace toric;

namespace {

enum Exit { kOk = 0, kNo = 1, kUnknown = 2, kInput = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A named input: a file path, a corpus entry or a builtin.
struct Input {
  std::string label;
  Json doc;
};

Input load(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name)) return {name, read_json_file(name)};
  const std::string corpus = corpus_dir() + "/" + name + ".json";
  if (fs::is_regular_file(corpus)) return {name, read_json_file(corpus)};
  if (is_builtin_fan(name)) return {name, to_json(builtin_fan(name))};
  if (is_builtin_presentation(name)) return {name, to_json(builtin_presentation(name))};
  throw InputError("no file, corpus entry or builtin named '" + name + "'");
}

Fan resolve_fan(const std::string& name, const std::string& relative_to) {
  namespace fs = std::filesystem;
  const fs::path local = fs::path(relative_to).parent_path() / name;
  if (!relative_to.empty() && fs::is_regular_file(local)) return fan_from_json(read_json_file(local.string()));
  return fan_from_json(load(name).doc);
}

Fan load_fan(const Input& in) {
  if (kind_of(in.doc) != "fan") throw InputError(in.label + " is a " + kind_of(in.doc) + ", expected a fan");
  return fan_from_json(in.doc);
}

Json ints(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.fits_slong_p() ? Json(x.get_si()) : Json(x.get_str()));
  return a;
}

Json sets(const std::vector<RaySet>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

Json group(const FinAbGroup& g) { return g.describe(); }

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void human(const Json& j, std::size_t indent, std::ostream& os) {
  const std::string pad(indent, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const bool flat = v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) {
                        return e.is_primitive() ||
                               (e.is_array() && std::all_of(e.begin(), e.end(), [](const Json& x) { return x.is_primitive(); }));
                      });
    if (v.is_primitive()) {
      os << pad << it.key() << ": " << scalar(v) << "\n";
    } else if (flat && v.dump().size() < 100) {
      os << pad << it.key() << ": " << v.dump() << "\n";
    } else if (v.is_object()) {
      os << pad << it.key() << ":\n";
      human(v, indent + 2, os);
    } else {
      os << pad << it.key() << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          std::ostringstream item;
          human(e, indent + 4, item);
          std::string text = item.str();
          text.replace(0, indent + 4, pad + "  - ");
          os << text;
        } else {
          os << pad << "  - " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
        }
      }
    }
  }
}

struct Options {
  std::string format = "human";
  std::string output;
  std::string input;
  std::size_t k = 1;
  std::size_t bound = 3;
  bool invariants = false;
};

Json header(const std::string& command, const Options& o) {
  Json r;
  r["command"] = command;
  r["input"] = o.input;
  r["threads"] = thread_count();
  return r;
}

int emit(Json report, const std::string& verdict, int code, const Options& o) {
  report["result"] = verdict;
  if (o.format == "json") {
    std::cout << canonical_dump(report);
  } else {
    human(report, 0, std::cout);
  }
  return code;
}

void write_output(const Options& o, const Json& doc) {
  if (!o.output.empty()) write_text_file(o.output, canonical_dump(doc));
}

int cmd_check(const Options& o) {
  const Input in = load(o.input);
  Json r = header("check", o);
  const std::string kind = kind_of(in.doc);
  r["kind"] = kind;
  if (kind == "fan") {
    const Fan f = fan_from_json(in.doc);
    const GlobalProps g = global_props(f);
    r["rank"] = f.rank;
    r["rays"] = f.rays.size();
    r["max_cones"] = f.max_cones.size();
    r["smooth"] = g.smooth;
    r["simplicial"] = g.simplicial;
    r["complete"] = g.complete;
    r["orbits"] = orbit_poset(f).size();
    return emit(r, "VALID", kOk, o);
  }
  if (kind == "presentation") {
    const QuotientPresentation qp = presentation_from_json(in.doc);
    r["n"] = qp.n;
    r["group"] = group(qp.group);
    r["faces"] = qp.family().size();
    r["free_locus"] = free_locus(qp).size();
    const SeparationResult sep = is_separated(qp);
    r["separated"] = sep.separated;
    if (!sep.separated) r["separation_witness"] = sep.reason;
    return emit(r, "VALID", kOk, o);
  }
  if (kind == "divisor") {
    const DivisorFile d = divisor_from_json(in.doc, [&](const std::string& n) { return resolve_fan(n, in.label); });
    r["coefficients"] = ints(d.coeffs);
    r["class"] = ints(class_group(d.fan).degree(d.coeffs));
    const CartierOutcome c = cartier_data(d.fan, d.coeffs);
    if (!c.data) {
      r["cartier"] = false;
      r["failing_cone"] = sets({d.fan.max_cones[c.failing_cone]});
      return emit(r, "NOT_CARTIER", kNo, o);
    }
    r["cartier"] = true;
    Json local = Json::array();
    for (const auto& m : c.data->local) local.push_back(ints(m));
    r["local_functionals"] = local;
    try {
      const SectionPolytope p = global_sections(d.fan, d.coeffs);
      r["sections"] = p.points.size();
    } catch (const UnboundedError&) {
      r["sections"] = "infinite";
    }
    return emit(r, "CARTIER", kOk, o);
  }
  throw InputError("check does not handle kind '" + kind + "'");
}

int cmd_classgroup(const Options& o) {
  const Fan f = load_fan(load(o.input));
  const ClassGroup cl = class_group(f);
  Json r = header("classgroup", o);
  r["group"] = group(cl.group);
  Json degs = Json::array();
  for (const auto& d : cl.ray_degrees()) degs.push_back(ints(d));
  r["ray_degrees"] = degs;
  // Exactness: principal divisors have degree zero.
  bool exact = true;
  for (std::size_t i = 0; i < f.rank; ++i) {
    IntVector e(f.rank, 0);
    e[i] = 1;
    const IntVector deg = cl.degree(principal_divisor(f, e));
    exact = exact && std::all_of(deg.begin(), deg.end(), [](const Integer& x) { return x == 0; });
  }
  r["principal_divisors_trivial"] = exact;
  r["picard_rank"] = cartier_lattice(f).cols() - f.rank;
  return emit(r, exact ? "OK" : "INCONSISTENT", exact ? kOk : kNo, o);
}

Json conoid_report(const ConoidPresentation& cp) {
  Json j;
  j["grading"] = group(cp.grading);
  Json gens = Json::array();
  for (const auto& g : cp.generators) gens.push_back(Json{{"exponent", ints(g.exponent)}, {"degree", ints(g.degree)}});
  j["generators"] = gens;
  j["cones"] = sets(cp.cones);
  j["stabilizers"] = ints(cp.stabilizers);
  j["free"] = cp.free;
  return j;
}

int cmd_cox(const Options& o) {
  const Fan f = load_fan(load(o.input));
  const ConoidPresentation cp = cox_presentation(f);
  Json r = header("cox", o);
  r.update(conoid_report(cp));
  Json irr = Json::array();
  for (const auto& m : cp.irrelevant) irr.push_back(ints(m));
  r["irrelevant"] = irr;
  write_output(o, to_json(cp));
  if (o.invariants && !cp.free) {
    const bool finite = std::none_of(cp.stabilizers.begin(), cp.stabilizers.end(), [](const Integer& s) { return s == 0; });
    if (finite) {
      const ConoidPresentation q = finite_group_quotient(cp);
      r["invariants"] = conoid_report(q);
    }
  }
  return emit(r, cp.free ? "FREE" : "NOT_FREE", kOk, o);
}

Json certificate_report(const Fan& f, const DivisorialCertificate& c) {
  return Json{{"cone", sets({f.max_cones[c.cone]})[0]}, {"coefficients", ints(c.divisor.coeffs)}};
}

int cmd_divisorial(const Options& o) {
  const Fan f = load_fan(load(o.input));
  Json r = header("divisorial", o);
  r["k"] = o.k;
  if (o.k <= 1) {
    const DivisorialResult d = is_divisorial(f);
    if (!d.divisorial) {
      r["witness_cone"] = sets({f.max_cones[d.failing_cone]})[0];
      r["cartier_rank"] = cartier_lattice(f).cols();
      return emit(r, "NOT_DIVISORIAL", kNo, o);
    }
    Json certs = Json::array();
    for (const auto& c : d.certificates) certs.push_back(certificate_report(f, c));
    r["certificates"] = certs;
    write_output(o, certificates_to_json(f, d.certificates));
    return emit(r, "DIVISORIAL", kOk, o);
  }
  const KDivisorialResult kd = k_divisorial_status(f, o.k);
  r["reason"] = kd.reason;
  if (kd.status == KDivisorialResult::Status::No) {
    r["witness_cone"] = sets({f.max_cones[kd.witness_cone]})[0];
    return emit(r, "NO", kNo, o);
  }
  if (kd.status == KDivisorialResult::Status::Unknown) return emit(r, "UNKNOWN", kUnknown, o);
  Json secs = Json::array();
  for (const auto& s : kd.sections)
    secs.push_back(Json{{"coefficients", ints(s.coeffs)}, {"support", s.support.size()}, {"covered", s.covered}});
  r["sections"] = secs;
  if (!kd.sections.empty()) {
    write_output(o, sections_to_json(f, o.k, kd.sections));
  } else {
    write_output(o, certificates_to_json(f, is_divisorial(f).certificates));
  }
  return emit(r, "YES", kOk, o);
}

int cmd_conoid(const Options& o) {
  const Fan f = load_fan(load(o.input));
  Json r = header("conoid", o);
  r["bound"] = o.bound;
  const DivisorialResult d = is_divisorial(f);
  if (!d.divisorial) {
    r["witness_cone"] = sets({f.max_cones[d.failing_cone]})[0];
    return emit(r, "NOT_DIVISORIAL", kNo, o);
  }
  const AmpleGroup ag = build_ample_group(f, d.certificates);
  const SectionSemigroup ss = section_semigroup(f, ag, o.bound);
  r["lambda_rank"] = ag.rank();
  Json basis = Json::array();
  for (std::size_t i = 0; i < ag.rank(); ++i)
    basis.push_back(Json{{"coefficients", ints(ag.basis[i].coeffs)}, {"class", ints(ag.basis_degrees[i])}});
  r["basis"] = basis;
  if (!ss.complete) return emit(r, "BOUND_EXHAUSTED", kUnknown, o);
  const ConoidPresentation cp = conoid_presentation(f, ag, ss);
  r.update(conoid_report(cp));
  Json classes = Json::array();
  for (const auto& g : ss.generators) {
    const IntVector lambda(g.begin() + f.rank, g.end());
    classes.push_back(ints(ag.class_group.degree(ag.divisor(lambda))));
  }
  r["class_degrees"] = classes;
  Json dist = Json::array();
  for (const auto& v : cp.distinguished) dist.push_back(ints(v));
  r["distinguished"] = dist;
  r["relations"] = cp.relations.size();
  Json out = to_json(cp);
  out["class_degrees"] = classes;
  write_output(o, out);
  return emit(r, "OK", kOk, o);
}

Json artifact_report(const EmbeddingArtifact& art) {
  Json j;
  j["ambient_coordinates"] = art.ambient.n;
  j["grading"] = group(art.ambient.group);
  Json degs = Json::array();
  for (const auto& d : art.ambient.degrees) degs.push_back(ints(d));
  j["degrees"] = degs;
  j["ambient_cones"] = sets(art.ambient.cones);
  j["free_locus"] = free_locus(art.ambient).size();
  j["separated"] = art.separated;
  j["smooth"] = art.smooth;
  j["charts_verified"] = art.charts.size();
  j["transcript"] = art.transcript;
  return j;
}

int cmd_embed(const Options& o) {
  const Fan f = load_fan(load(o.input));
  Json r = header("embed", o);
  r["k"] = o.k;
  r["bound"] = o.bound;
  const EmbeddingOutcome out = build_embedding(f, o.k, o.bound);
  using S = EmbeddingOutcome::Status;
  switch (out.status) {
    case S::NotDivisorial:
      r["reason"] = out.reason;
      return emit(r, "NOT_DIVISORIAL", kNo, o);
    case S::BoundExhausted:
      r["reason"] = out.reason;
      return emit(r, "BOUND_EXHAUSTED", kUnknown, o);
    case S::Unknown:
      r["reason"] = out.reason;
      return emit(r, "UNKNOWN", kUnknown, o);
    case S::Ok:
      break;
  }
  r.update(artifact_report(*out.artifact));
  write_output(o, to_json(*out.artifact));
  return emit(r, "EMBEDDED", kOk, o);
}

int cmd_aksets(const Options& o) {
  const Input in = load(o.input);
  const std::string kind = kind_of(in.doc);
  FiniteSpace space;
  if (kind == "fan") {
    space = orbit_space(fan_from_json(in.doc));
  } else if (kind == "presentation") {
    space = orbit_space(presentation_from_json(in.doc));
  } else {
    throw InputError("aksets needs a fan or a presentation");
  }
  const auto family = invariant_chart_family(space);
  const AkAnalysis an = analyze_uk(space, family, std::max<std::size_t>(o.k, 1));
  Json r = header("aksets", o);
  r["k"] = an.k;
  r["family"] = "invariant affine charts";
  const Json detail = to_json(space, an);
  for (const char* key : {"points", "components", "projections", "maximal"}) r[key] = detail[key];
  Json named = Json::array();
  for (auto m : an.maximal) named.push_back(space.describe(m));
  r["maximal_named"] = named;
  write_output(o, detail);
  return emit(r, "OK", kOk, o);
}

int cmd_verify(const Options& o) {
  const Input in = load(o.input);
  const std::string kind = kind_of(in.doc);
  Json r = header("verify", o);
  r["kind"] = kind;
  if (kind == "embedding") {
    const EmbeddingArtifact art = artifact_from_json(in.doc);
    try {
      r["transcript"] = check_artifact(art);
    } catch (const VerificationFailure& e) {
      r["failure"] = e.what();
      return emit(r, "FAILED", kNo, o);
    }
    return emit(r, "VERIFIED", kOk, o);
  }
  if (kind == "divisorial_certificates") {
    Fan f;
    const auto certs = certificates_from_json(in.doc, f);
    std::vector<bool> covered(f.max_cones.size(), false);
    for (const auto& c : certs) {
      if (auto e = verify_certificate(f, c)) {
        r["failure"] = "certificate for cone " + std::to_string(c.cone) + ": " + *e;
        return emit(r, "FAILED", kNo, o);
      }
      if (c.cone < covered.size()) covered[c.cone] = true;
    }
    const bool all = std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
    r["certificates"] = certs.size();
    r["covers_all_cones"] = all;
    return emit(r, "VERIFIED", kOk, o);
  }
  if (kind == "section_certificates") {
    Fan f;
    std::size_t k = 0;
    const auto secs = sections_from_json(in.doc, f, k);
    for (std::size_t i = 0; i < secs.size(); ++i)
      if (auto e = verify_section_certificate(f, secs[i])) {
        r["failure"] = "section " + std::to_string(i) + ": " + *e;
        return emit(r, "FAILED", kNo, o);
      }
    r["k"] = k;
    r["sections"] = secs.size();
    return emit(r, "VERIFIED", kOk, o);
  }
  if (kind == "fan") {
    fan_from_json(in.doc);
    return emit(r, "VERIFIED", kOk, o);
  }
  if (kind == "presentation") {
    presentation_from_json(in.doc);
    return emit(r, "VERIFIED", kOk, o);
  }
  throw InputError("verify does not handle kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toric geometry: quotient presentations, divisoriality, embeddings"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("input", o.input, what)->required();
    sub->add_option("--format", o.format, "Report layout")->check(CLI::IsMember({"human", "json"}));
    sub->add_option("-o,--output", o.output, "Write the machine-readable document to this file");
  };
  auto* check = app.add_subcommand("check", "Validate a fan, presentation or divisor and report its properties");
  common(check, "File path, corpus name or builtin");
  auto* cl = app.add_subcommand("classgroup", "Divisor class group and ray degrees");
  common(cl, "Fan");
  auto* cox = app.add_subcommand("cox", "Cox presentation with stabilizer orders");
  common(cox, "Fan");
  cox->add_flag("--invariants", o.invariants, "Also report the quotient by the finite stabilizers");
  auto* div = app.add_subcommand("divisorial", "Divisoriality certificates or k-divisoriality status");
  common(div, "Fan");
  div->add_option("--k", o.k, "Number of points")->check(CLI::Range(std::size_t{1}, std::size_t{16}));
  auto* con = app.add_subcommand("conoid", "Affine conoid from the section semigroup");
  common(con, "Fan");
  con->add_option("--bound", o.bound, "Degree bound for semigroup generators");
  auto* emb = app.add_subcommand("embed", "Embedding into a smooth toric ambient");
  common(emb, "Fan");
  emb->add_option("--k", o.k, "Number of points")->check(CLI::Range(std::size_t{1}, std::size_t{16}));
  emb->add_option("--bound", o.bound, "Degree bound for semigroup generators");
  auto* ak = app.add_subcommand("aksets", "Maximal open U_k-subsets for the invariant charts");
  common(ak, "Fan or presentation");
  ak->add_option("--k", o.k, "Number of points")->check(CLI::Range(std::size_t{1}, std::size_t{16}));
  auto* ver = app.add_subcommand("verify", "Re-check an artifact or certificate file without searching");
  common(ver, "Artifact or certificate file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  if (emb->parsed() && o.k == 1) o.k = 2;
  try {
    if (check->parsed()) return cmd_check(o);
    if (cl->parsed()) return cmd_classgroup(o);
    if (cox->parsed()) return cmd_cox(o);
    if (div->parsed()) return cmd_divisorial(o);
    if (con->parsed()) return cmd_conoid(o);
    if (emb->parsed()) return cmd_embed(o);
    if (ak->parsed()) return cmd_aksets(o);
    if (ver->parsed()) return cmd_verify(o);
  } catch (const ParseError& e) {
    std::cerr << "input error at " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const SpanError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
