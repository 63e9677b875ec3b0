#ifndef GRPD_JSON_IO_HPP
#define GRPD_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "grpd/cosheaf.hpp"
#include "grpd/diagrams.hpp"
#include "grpd/space.hpp"

namespace grpd {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Input parsing failure; carries the offending file or key in the message.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

Json load_json_file(const std::string& path);

ConcreteGroupoid groupoid_from_json(const Json& j);
Json to_json(const ConcreteGroupoid& g);

PresentedGroupoid presentation_from_json(const Json& j);
Json to_json(const PresentedGroupoid& p);

Complex2 complex_from_json(const Json& j);
Json to_json(const Complex2& c);

/// Cover file: named subcomplexes of a parent complex, listed by element ids.
std::vector<Subcomplex> cover_from_json(const Json& j, ComplexPtr parent);

/// Diagram values may be inline or a string path to a groupoid or
/// presentation file, resolved relative to `base_dir`.
PresDiagram pres_diagram_from_json(const Json& j, const std::string& base_dir = "");
ConcreteDiagram concrete_diagram_from_json(const Json& j, const std::string& base_dir = "");

struct DeformSquare {
  GroupoidPtr A, B, C, D;
  ConcreteFunctor i1, i2, j1, j2;
  NatIso lambda;
};
DeformSquare square_from_json(const Json& j);

Json to_json(const EquivalenceInvariant& f);
Json to_json(const ConcreteFunctor& f);
Json to_json(const NatIso& a);
Json to_json(const PresFunctor& f);

}  // namespace grpd

#endif
