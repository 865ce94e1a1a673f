#include "snmono/norms.hpp"

namespace snmono {

NormKind NormKind::product(NormKind first, NormKind second) {
  if (!norms_are_dual_pair(first, second))
    throw Error("NormKind::product: blocks must be a (norm, dual norm) pair");
  NormKind k(NormTag::product);
  k.blocks_ = std::make_shared<const std::pair<NormKind, NormKind>>(std::move(first), std::move(second));
  return k;
}

const NormKind& NormKind::first() const {
  if (!blocks_) throw Error("NormKind: not a product norm");
  return blocks_->first;
}

const NormKind& NormKind::second() const {
  if (!blocks_) throw Error("NormKind: not a product norm");
  return blocks_->second;
}

std::string NormKind::name() const {
  switch (tag_) {
    case NormTag::euclidean: return "euclidean";
    case NormTag::ell1: return "ell1";
    case NormTag::ellinf: return "ellinf";
    case NormTag::product: return "product(" + first().name() + "," + second().name() + ")";
  }
  return "?";
}

bool NormKind::operator==(const NormKind& other) const {
  if (tag_ != other.tag_) return false;
  if (tag_ != NormTag::product) return true;
  return first() == other.first() && second() == other.second();
}

double norm_value(const NormKind& kind, const Vec& x) {
  switch (kind.tag()) {
    case NormTag::euclidean: return x.norm();
    case NormTag::ell1: return x.lpNorm<1>();
    case NormTag::ellinf: return x.size() == 0 ? 0.0 : x.lpNorm<Eigen::Infinity>();
    case NormTag::product: {
      if (x.size() % 2 != 0) throw DimensionError("product norm needs even dimension");
      const int n = static_cast<int>(x.size()) / 2;
      const double a = norm_value(kind.first(), x.head(n));
      const double b = norm_value(kind.second(), x.tail(n));
      return std::sqrt(a * a + b * b);
    }
  }
  throw Error("norm_value: bad tag");
}

NormKind dual_norm(const NormKind& kind) {
  switch (kind.tag()) {
    case NormTag::euclidean: return NormKind::euclidean();
    case NormTag::ell1: return NormKind::ellinf();
    case NormTag::ellinf: return NormKind::ell1();
    case NormTag::product:
      return NormKind::product(dual_norm(kind.first()), dual_norm(kind.second()));
  }
  throw Error("dual_norm: bad tag");
}

bool norms_are_dual_pair(const NormKind& a, const NormKind& b) {
  switch (a.tag()) {
    case NormTag::euclidean: return b.tag() == NormTag::euclidean;
    case NormTag::ell1: return b.tag() == NormTag::ellinf;
    case NormTag::ellinf: return b.tag() == NormTag::ell1;
    case NormTag::product:
      return b.tag() == NormTag::product && norms_are_dual_pair(a.first(), b.first()) &&
             norms_are_dual_pair(a.second(), b.second());
  }
  return false;
}

}  // namespace snmono
