#ifndef ACYLKIT_CERTIFICATE_HPP_
#define ACYLKIT_CERTIFICATE_HPP_

#include <string>
#include <vector>

#include "json.hpp"

namespace acyl {

enum class Verdict {
  AcylindricallyHyperbolic,
  VirtuallyCyclic,
  Finite,
  Reducible,
  NotAH,
  Unknown,
};

std::string verdict_name(Verdict v);
Verdict verdict_from_name(std::string const& name);

// A named, typed, serializable piece of evidence. The value is free-form
// JSON whose shape is fixed per (type) by the producing module; every
// witness can be replayed by recheck_certificate.
struct Witness {
  std::string name;
  std::string type;
  nlohmann::json value;

  bool operator==(Witness const& other) const {
    return name == other.name && type == other.type && value == other.value;
  }
};

struct Certificate {
  Verdict verdict = Verdict::Unknown;
  std::string criterion;
  std::vector<Witness> witnesses;
  std::string notes;

  bool operator==(Certificate const&) const = default;

  void add(std::string name, std::string type, nlohmann::json value) {
    witnesses.push_back({std::move(name), std::move(type), std::move(value)});
  }
  Witness const* find(std::string const& name) const {
    for (auto const& w : witnesses)
      if (w.name == name) return &w;
    return nullptr;
  }
};

// Deterministic serialization; parse(emit(c)) == c.
std::string emit_certificate(Certificate const& c);
Certificate parse_certificate(std::string const& text);

nlohmann::ordered_json certificate_to_json(Certificate const& c);
Certificate certificate_from_json(nlohmann::json const& j);

}  // namespace acyl

#endif  // ACYLKIT_CERTIFICATE_HPP_
