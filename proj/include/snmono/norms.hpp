#pragma once

#include "snmono/common.hpp"

#include <memory>
#include <string>
#include <utility>

namespace snmono {

enum class NormTag { euclidean, ell1, ellinf, product };

// A norm on a coordinate space.  `product` is the sqrt(|x|^2 + |x*|^2)
// combination of two block norms on an even-dimensional space; the blocks
// must be a primal norm and its dual (euclidean/euclidean, ell1/ellinf or
// ellinf/ell1), which is what makes the block-swap map nonexpansive.
class NormKind {
 public:
  NormKind() : tag_(NormTag::euclidean) {}

  static NormKind euclidean() { return NormKind(NormTag::euclidean); }
  static NormKind ell1() { return NormKind(NormTag::ell1); }
  static NormKind ellinf() { return NormKind(NormTag::ellinf); }
  static NormKind product(NormKind first, NormKind second);

  NormTag tag() const { return tag_; }
  bool is_product() const { return tag_ == NormTag::product; }
  const NormKind& first() const;
  const NormKind& second() const;

  std::string name() const;
  bool operator==(const NormKind& other) const;

 private:
  explicit NormKind(NormTag t) : tag_(t) {}
  NormTag tag_;
  std::shared_ptr<const std::pair<NormKind, NormKind>> blocks_;
};

double norm_value(const NormKind& kind, const Vec& x);
NormKind dual_norm(const NormKind& kind);

// True when `a` and `b` are dual to each other.
bool norms_are_dual_pair(const NormKind& a, const NormKind& b);

}  // namespace snmono
