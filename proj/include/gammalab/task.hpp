#pragma once

#include <array>
#include <string>
#include <vector>

#include "gammalab/linalg.hpp"

namespace gammalab {

// One of the four attribute combinations. The class label follows the XOR
// rule: matching attributes are class A (0), mismatching are class B (1).
struct DomainElement {
  int id;           // 0..3
  int color;        // 0 = red, 1 = blue
  int shape;        // 0 = square, 1 = circle
  int class_label;  // color XOR shape; 0 = A, 1 = B
  const char* display_name;
};

// The canonical four elements in id order:
//   e0 = red square (0,0)   class A
//   e1 = blue circle (1,1)  class A
//   e2 = red circle (0,1)   class B
//   e3 = blue square (1,0)  class B
// This ordering is load-bearing: the loss pairs same-class indices (0,1)
// and (2,3) and cross-class indices {0,1}x{2,3}.
const std::array<DomainElement, 4>& full_domain();

struct Split {
  std::vector<DomainElement> train;  // class A only: e0, e1
  std::vector<DomainElement> test;   // class B only: e2, e3
};

Split split();

// Raw bit encoding {0.0, 1.0}^2 fed to the networks.
Vec input_vector(const DomainElement& e);

const char* class_name(int class_label);  // "A" or "B"

// Display-name lookup, used by the truth-table CSV codec.
const DomainElement& element_by_name(const std::string& name);

}  // namespace gammalab
