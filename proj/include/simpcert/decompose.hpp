#pragma once

// The two headline decomposition pipelines (six conjugate factors on the
// ordered carrier, nine on the Cantor carrier, commutator widths two and
// three) plus the clopen fragmentation toolkit they are assembled from.
// Every stage re-verifies its postcondition by exact composition.

#include "simpcert/cantor.hpp"
#include "simpcert/displacement.hpp"
#include "simpcert/plmap.hpp"

namespace simpcert {

struct OrderInstance {
  int q = 2;
  CommutatorWord<PLMap> target;
  PLMap g = PLMap::identity(2);
};

struct CantorInstance {
  TreeShape shape;
  CommutatorWord<PrefixMap> target;
  Witnessed<PrefixMap> g;
};

template <GroupElement G>
struct WidthDecomposition {
  G target;
  CommutatorWord<G> word;
  // Strict mode: per-pair witnesses that both entries lie in the derived
  // subgroup (empty otherwise).
  std::vector<std::pair<CommutatorWord<G>, CommutatorWord<G>>> entry_witnesses;

  bool verify() const { return word.evaluate(identity_like(target)) == target; }
};

// ---- ordered carrier ----

// Factor the target into at most six conjugates of g^{+-1}. In strict mode
// every conjugator lands in the derived subgroup and carries a witness.
ConjugateFactorization<PLMap> order_six_factor(const OrderInstance& inst, bool strict = false);

// The target as a product of at most two commutators.
WidthDecomposition<PLMap> order_width_two(const OrderInstance& inst, bool strict = false);

// ---- clopen fragmentation toolkit ----

// gamma with gamma(U) strictly inside V. In good position (V \ U nonempty)
// the witness is a single pair of tau involutions and gamma has order 3;
// in general the result is a product of two such elements. A single
// finite-order element cannot work when V is contained in U, since
// gamma(U) inside U with gamma of finite order forces gamma(U) = U.
Witnessed<PrefixMap> ep_witness_commutator(const ClopenSet& u, const ClopenSet& v);

// h in the derived subgroup with V disjoint from (h f h^-1)(V).
Witnessed<PrefixMap> displace_conj_commutator(const PrefixMap& f, const ClopenSet& v);

struct TrivializeResult {
  Witnessed<PrefixMap> h;
  ClopenSet window;  // (h g h^-1) f is the identity here
  bool early_exit = false;
};

// h in the derived subgroup such that (h g h^-1) f fixes a clopen window.
TrivializeResult trivialize_on_clopen(const PrefixMap& f, const PrefixMap& g);

struct EmbedResult {
  ClopenSet u;  // proper, strictly containing v
  CommutatorWord<PrefixMap> word;
};

// Push a commutator word whose evaluation is supported in v to a word with
// the same evaluation and all entries supported in a larger proper clopen.
EmbedResult commutant_embed(const CommutatorWord<PrefixMap>& word, const ClopenSet& v);

// h supported in v, itself a single commutator of elements supported in v,
// whose iterates keep every image of u pairwise disjoint.
Witnessed<PrefixMap> infinite_displacer(const ClopenSet& u, const ClopenSet& v,
                                        int disjointness_checks = 10);

// Clopen strictly between s and t.
ClopenSet clopen_sandwich(const ClopenSet& s, const ClopenSet& t);

// ---- cantor carrier pipelines ----

// Factor the target into at most nine conjugates of g^{+-1}.
ConjugateFactorization<PrefixMap> cantor_nine_factor(const CantorInstance& inst,
                                                     bool strict = false);

// The target as a product of at most three commutators. Requires the
// instance's g to carry a single-commutator witness.
WidthDecomposition<PrefixMap> cantor_width_three(const CantorInstance& inst, bool strict = false);

}  // namespace simpcert
