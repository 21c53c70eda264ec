// JSON file formats. Every document carries a "kind" field; serializers
// emit a canonical layout so that parse followed by serialize reproduces a
// canonical file byte for byte.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "toric/akset.hpp"
#include "toric/conoid.hpp"
#include "toric/divisor.hpp"
#include "toric/embed.hpp"

namespace toric {

using Json = nlohmann::ordered_json;

/// Malformed input. `where` is "line L, column C" for syntax errors and a
/// JSON pointer such as "/rays/2/1" for schema errors.
struct ParseError : std::runtime_error {
  std::string where;
  ParseError(const std::string& where, const std::string& what);
};

/// Canonical text: objects one key per line, arrays of scalars on one line,
/// two-space indent, trailing newline.
std::string canonical_dump(const Json& j);

Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string kind_of(const Json& j);

Json to_json(const Fan& f);
Fan fan_from_json(const Json& j);
Fan parse_fan(const std::string& text);
std::string serialize(const Fan& f);

Json to_json(const QuotientPresentation& qp);
QuotientPresentation presentation_from_json(const Json& j);

struct DivisorFile {
  Fan fan;
  IntVector coeffs;
};
/// "fan" is either an inline fan object or a name resolved by `resolve`.
DivisorFile divisor_from_json(const Json& j, const std::function<Fan(const std::string&)>& resolve);
Json to_json(const Fan& f, const IntVector& coeffs);

/// Divisoriality certificates bundled with their fan.
Json certificates_to_json(const Fan& f, const std::vector<DivisorialCertificate>& certs);
std::vector<DivisorialCertificate> certificates_from_json(const Json& j, Fan& fan);

Json sections_to_json(const Fan& f, std::size_t k, const std::vector<SectionCertificate>& certs);
std::vector<SectionCertificate> sections_from_json(const Json& j, Fan& fan, std::size_t& k);

Json to_json(const EmbeddingArtifact& art);
EmbeddingArtifact artifact_from_json(const Json& j);

Json to_json(const ConoidPresentation& cp);
Json to_json(const FiniteSpace& space, const AkAnalysis& an);

}  // namespace toric
