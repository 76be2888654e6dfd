#pragma once

#include <string>

#include <json.hpp>

#include "lorentz/dkk.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/projections.hpp"
#include "lorentz/seq.hpp"
#include "lorentz/weights.hpp"

namespace lorentz {

using nlohmann::json;

// "%.15g" — the numeric format of every report and CSV cell.
std::string format_double(double v);
// Doubles rounded through format_double before entering report JSON.
json num(double v);

// [{"n":1,"a":0.5}, ...], strictly increasing n, zero values rejected.
SparseVec parse_sparse_vec(const json& j);
json to_json(const SparseVec& f);

// {"kind":"power","p":2.0,"N":65536} | {"kind":"explicit","values":[...]}
// | {"kind":"from_increments","w":[...],"q":0.5}
WeightSeq parse_weight(const json& j, int default_horizon);

// {"space":"d_q","weight":{...},"q":0.5} | {"space":"lpq","p":2,"q":0.5}
// A d_q space whose weight was given as from_increments at the same q keeps
// the explicit d(w,q) parameterization.
LorentzSpaceSpec parse_space(const json& j, int default_horizon);

// [[1,2],[5,6,7]]
DisjointFamily parse_family(const json& j);
json to_json(const DisjointFamily& a);

// {"base":{"kind":"diff_lq","q":...}|{"kind":"unit_lq","q":...}
//         |{"kind":"dq","weight":{...},"q":...}
//         |{"kind":"direct_sum","x":{...},"y":{...},"q_sum":...},
//  "sym":{space...},
//  "partition":{"kind":"dyadic","k":10}|{"kind":"constant","size":4,"count":8}
//             |{"kind":"explicit","sizes":[...]}}
DkkSpec parse_dkk_spec(const json& j, int default_horizon);
std::shared_ptr<const NormOracle> parse_base_oracle(const json& j, int default_horizon);
IntervalPartition parse_interval_partition(const json& j);

json to_json(const RegularityReport& rep);
json to_json(const UrpEquivalences& rep);
json to_json(const TheoremBound& bound);
json to_json(const ProofTrace& trace);
json to_json(const SearchResult& result);
json to_json(const BoundCheck& check);

} // namespace lorentz
