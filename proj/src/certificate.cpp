#include "acylkit/certificate.hpp"

#include "acylkit/errors.hpp"

namespace acyl {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::AcylindricallyHyperbolic:
      return "acylindrically_hyperbolic";
    case Verdict::VirtuallyCyclic:
      return "virtually_cyclic";
    case Verdict::Finite:
      return "finite";
    case Verdict::Reducible:
      return "reducible";
    case Verdict::NotAH:
      return "not_ah";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

Verdict verdict_from_name(std::string const& name) {
  for (Verdict v :
       {Verdict::AcylindricallyHyperbolic, Verdict::VirtuallyCyclic,
        Verdict::Finite, Verdict::Reducible, Verdict::NotAH, Verdict::Unknown})
    if (verdict_name(v) == name) return v;
  throw SchemaError("verdict", "unknown verdict '" + name + "'");
}

nlohmann::ordered_json certificate_to_json(Certificate const& c) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(c.verdict);
  j["criterion"] = c.criterion;
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (Witness const& w : c.witnesses) {
    nlohmann::ordered_json wj;
    wj["name"] = w.name;
    wj["type"] = w.type;
    wj["value"] = w.value;
    ws.push_back(std::move(wj));
  }
  j["witnesses"] = std::move(ws);
  j["notes"] = c.notes;
  return j;
}

Certificate certificate_from_json(nlohmann::json const& j) {
  if (!j.is_object()) throw SchemaError("certificate", "expected object");
  Certificate c;
  if (!j.contains("verdict") || !j["verdict"].is_string())
    throw SchemaError("verdict", "missing or non-string");
  c.verdict = verdict_from_name(j["verdict"].get<std::string>());
  c.criterion = j.value("criterion", std::string{});
  c.notes = j.value("notes", std::string{});
  if (j.contains("witnesses")) {
    if (!j["witnesses"].is_array())
      throw SchemaError("witnesses", "expected array");
    for (auto const& wj : j["witnesses"]) {
      Witness w;
      if (!wj.contains("name") || !wj.contains("type") || !wj.contains("value"))
        throw SchemaError("witnesses", "witness needs name/type/value");
      w.name = wj["name"].get<std::string>();
      w.type = wj["type"].get<std::string>();
      w.value = wj["value"];
      c.witnesses.push_back(std::move(w));
    }
  }
  return c;
}

std::string emit_certificate(Certificate const& c) {
  return certificate_to_json(c).dump(2) + "\n";
}

Certificate parse_certificate(std::string const& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw SyntaxError(e.what(), e.byte);
  }
  return certificate_from_json(j);
}

}  // namespace acyl
