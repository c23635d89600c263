#include "gammalab/task.hpp"

#include "gammalab/errors.hpp"

namespace gammalab {

const std::array<DomainElement, 4>& full_domain() {
  static const std::array<DomainElement, 4> kDomain = {{
      {0, 0, 0, 0, "red square"},
      {1, 1, 1, 0, "blue circle"},
      {2, 0, 1, 1, "red circle"},
      {3, 1, 0, 1, "blue square"},
  }};
  return kDomain;
}

Split split() {
  const auto& d = full_domain();
  return {{d[0], d[1]}, {d[2], d[3]}};
}

Vec input_vector(const DomainElement& e) {
  return {static_cast<double>(e.color), static_cast<double>(e.shape)};
}

const char* class_name(int class_label) { return class_label ? "B" : "A"; }

const DomainElement& element_by_name(const std::string& name) {
  for (const DomainElement& e : full_domain())
    if (name == e.display_name) return e;
  throw ParseError("unknown element name: " + name);
}

}  // namespace gammalab
