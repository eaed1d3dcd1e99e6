#pragma once

#include <concepts>
#include <optional>
#include <utility>
#include <vector>

#include "simpcert/error.hpp"

namespace simpcert {

// Carrier of an exact group: both PLMap and PrefixMap satisfy this, as does
// the symbolic carrier used by the tests.
template <typename G>
concept GroupElement = requires(const G& a, const G& b) {
  { compose(a, b) } -> std::convertible_to<G>;
  { inverse(a) } -> std::convertible_to<G>;
  { conjugate(a, b) } -> std::convertible_to<G>;   // b a b^-1
  { commutator(a, b) } -> std::convertible_to<G>;  // a b a^-1 b^-1
  { identity_like(a) } -> std::convertible_to<G>;
  { a == b } -> std::convertible_to<bool>;
};

// Product of commutators; the empty word is the identity.
template <GroupElement G>
struct CommutatorWord {
  std::vector<std::pair<G, G>> pairs;

  G evaluate(const G& id_elem) const {
    G acc = id_elem;
    for (const auto& [a, b] : pairs) acc = compose(acc, commutator(a, b));
    return acc;
  }

  std::vector<G> entries() const {
    std::vector<G> out;
    for (const auto& [a, b] : pairs) {
      out.push_back(a);
      out.push_back(b);
    }
    return out;
  }

  CommutatorWord<G> conjugated(const G& w) const {
    CommutatorWord<G> out;
    for (const auto& [a, b] : pairs) out.pairs.push_back({conjugate(a, w), conjugate(b, w)});
    return out;
  }

  // (prod [a_i,b_i])^-1 = prod, reversed, of [b_i,a_i].
  CommutatorWord<G> inverted() const {
    CommutatorWord<G> out;
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it)
      out.pairs.push_back({it->second, it->first});
    return out;
  }

  CommutatorWord<G> concat(const CommutatorWord<G>& other) const {
    CommutatorWord<G> out = *this;
    out.pairs.insert(out.pairs.end(), other.pairs.begin(), other.pairs.end());
    return out;
  }

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

// An element together with a commutator word certifying membership in the
// relevant derived subgroup.
template <GroupElement G>
struct Witnessed {
  G element;
  CommutatorWord<G> witness;

  bool verify() const { return witness.evaluate(identity_like(element)) == element; }
};

template <GroupElement G>
struct ConjugateFactor {
  G conjugator;
  int sign = 1;  // +1 or -1
  // Strict mode tracks a derived-subgroup witness for the conjugator.
  std::optional<CommutatorWord<G>> conjugator_witness;
};

// Claim: target = prod_i  w_i base^{sign_i} w_i^-1, with at most
// claimed_bound factors.
template <GroupElement G>
struct ConjugateFactorization {
  G base;
  G target;
  int claimed_bound = 0;
  std::vector<ConjugateFactor<G>> factors;

  G evaluate() const {
    G acc = identity_like(base);
    G base_inv = inverse(base);
    for (const auto& f : factors)
      acc = compose(acc, conjugate(f.sign > 0 ? base : base_inv, f.conjugator));
    return acc;
  }

  bool verify() const {
    return static_cast<int>(factors.size()) <= claimed_bound && evaluate() == target;
  }
};

}  // namespace simpcert
