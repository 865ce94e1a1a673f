#pragma once

#include "snmono/alignment.hpp"
#include "snmono/convex_fn.hpp"
#include "snmono/linear_relations.hpp"
#include "snmono/mono_ops.hpp"
#include "snmono/positive_sets.hpp"
#include "snmono/sn_space.hpp"

#include <json.hpp>

#include <string>

namespace snmono {

using Json = nlohmann::json;

Json norm_to_json(const NormKind& k);
NormKind norm_from_json(const Json& j);

// {dim, norm, L: row-major}
Json space_to_json(const SnSpace& s);
SnSpace space_from_json(const Json& j);

Json convex_fn_to_json(const ConvexFn& f);
ConvexFn convex_fn_from_json(const Json& j);

Json set_to_json(const LPositiveSet& A);
LPositiveSet set_from_json(const Json& j);

Json mono_map_to_json(const MonoMap& S);
MonoMap mono_map_from_json(const Json& j);

// {n, basis: column-major, cols}
Json relation_to_json(const LinearRelation& A);
LinearRelation relation_from_json(const Json& j);

Json certificate_to_json(const GapCertificate& cert);
std::string certificate_to_csv(const GapCertificate& cert);

// Sampled-graph CSV with columns x0..x{n-1}, xs0..xs{n-1}.
std::string sampled_graph_csv(const MonoMap& S, int count, std::uint64_t seed);

Json alignment_to_json(const AlignmentResult& r);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

// Shortest round-trip decimal text for a double.
std::string format_double(double v);

}  // namespace snmono
