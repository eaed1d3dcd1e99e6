#pragma once

// Group-agnostic displacement machinery: an element h "k-displaces" a
// subgroup H when every h^j-conjugate of H (1 <= j <= k) commutes with H
// elementwise. Everything here consumes injected displacement oracles and
// re-verifies each identity by exact composition before returning.

#include <functional>

#include "simpcert/group_words.hpp"

namespace simpcert {

// Returns an element h that k-displaces the subgroup generated by the given
// elements.
template <GroupElement G>
using DisplacementOracle = std::function<Witnessed<G>(const std::vector<G>&, int)>;

// Returns (w, w g w^-1) where the conjugate k-displaces the subgroup
// generated by the given elements.
template <GroupElement G>
using ConjugatingOracle = std::function<std::pair<G, G>(const std::vector<G>&, int)>;

// Generator-level displacement test; commuting is multiplicative, so this
// is equivalent to the subgroup-level condition.
template <GroupElement G>
bool is_k_displacing(const G& h, const std::vector<G>& gens, int k) {
  G id = identity_like(h);
  G hj = id;
  for (int j = 1; j <= k; ++j) {
    hj = compose(hj, h);
    for (const G& y : gens) {
      G conj_y = conjugate(y, hj);
      for (const G& x : gens)
        if (!(commutator(x, conj_y) == id)) return false;
    }
  }
  return true;
}

// [alpha, beta] written as four conjugates of h^{+-1}, with conjugators from
// the subgroup generated by alpha and beta. Requires that alpha commutes
// with the h-conjugate of beta; then
//   [alpha, beta] = (^{alpha beta}h) (^{alpha}h^-1) (h) (^{beta}h^-1).
template <GroupElement G>
ConjugateFactorization<G> expand_commutator(const G& alpha, const G& beta, const G& h) {
  G id = identity_like(h);
  require(commutator(alpha, conjugate(beta, h)) == id,
          "expand_commutator: alpha does not commute with the h-conjugate of beta");

  ConjugateFactorization<G> out;
  out.base = h;
  out.target = commutator(alpha, beta);
  out.claimed_bound = 4;
  out.factors = {{compose(alpha, beta), +1, std::nullopt},
                 {alpha, -1, std::nullopt},
                 {id, +1, std::nullopt},
                 {beta, -1, std::nullopt}};
  check_internal(out.verify(), "expand_commutator: factor product is off");
  return out;
}

template <GroupElement G>
struct MergedWord {
  G alpha;
  G beta;
  G gamma;
};

// Merge a product of k commutators into [alpha,beta][gamma,h], given h
// displacing the entries k-1 times. The slot construction: conjugating the
// i-th pair by h^{i-1} makes all pairs commute, so the slotwise product of
// commutators is a single commutator, and the leftover telescopes into
// [gamma, h].
template <GroupElement G>
MergedWord<G> merge_commutator_word(const CommutatorWord<G>& word, const G& h) {
  G id = identity_like(h);
  const int k = static_cast<int>(word.size());
  if (k == 0) return {id, id, id};
  if (k == 1) return {word.pairs[0].first, word.pairs[0].second, id};

  require(is_k_displacing(h, word.entries(), k - 1),
          "merge_commutator_word: h does not displace the word entries far enough");

  std::vector<G> h_pow{id};
  for (int i = 1; i < k; ++i) h_pow.push_back(compose(h_pow.back(), h));

  G alpha = id, beta = id;
  for (int i = 0; i < k; ++i) {
    alpha = compose(alpha, conjugate(word.pairs[i].first, h_pow[i]));
    beta = compose(beta, conjugate(word.pairs[i].second, h_pow[i]));
  }

  // gamma = prod_{i=0..k-2} h^i-conjugate of (c_{i+2} ... c_k).
  std::vector<G> comms;
  for (int i = 0; i < k; ++i) comms.push_back(commutator(word.pairs[i].first, word.pairs[i].second));
  G gamma = id;
  for (int i = 0; i + 2 <= k; ++i) {
    G tail = id;
    for (int j = i + 1; j < k; ++j) tail = compose(tail, comms[j]);
    gamma = compose(gamma, conjugate(tail, h_pow[i]));
  }

  G lhs = word.evaluate(id);
  G rhs = compose(commutator(alpha, beta), commutator(gamma, h));
  check_internal(lhs == rhs, "merge_commutator_word: merge identity failed verification");
  return {alpha, beta, gamma};
}

// Rewrite the commutator [alpha, beta] as a commutator of derived-subgroup
// elements: with h displacing <alpha, beta> and g2 displacing
// <alpha, beta, h>,  [[alpha,g2], [beta,h]] = [alpha, beta].
template <GroupElement G>
std::pair<Witnessed<G>, Witnessed<G>> rewrite_in_derived(const G& alpha, const G& beta,
                                                         const DisplacementOracle<G>& oracle) {
  G id = identity_like(alpha);
  G h = oracle({alpha, beta}, 1).element;
  require(commutator(alpha, conjugate(beta, h)) == id,
          "rewrite_in_derived: oracle element fails to displace beta off alpha");
  G bh = commutator(beta, h);
  G g2 = oracle({alpha, beta, h}, 1).element;
  require(commutator(conjugate(alpha, g2), bh) == id,
          "rewrite_in_derived: oracle element fails to displace alpha off [beta,h]");

  Witnessed<G> a2{commutator(alpha, g2), {{{alpha, g2}}}};
  Witnessed<G> b2{bh, {{{beta, h}}}};
  check_internal(commutator(a2.element, b2.element) == commutator(alpha, beta),
                 "rewrite_in_derived: rewritten commutator differs");
  return {a2, b2};
}

// Every product of commutators becomes at most six conjugates of g^{+-1}:
// merge into [alpha,beta][gamma,h1] with h1 a displacing conjugate of g,
// then expand [alpha,beta] against a second conjugate (4 factors) and write
// [gamma,h1] as two factors.
template <GroupElement G>
ConjugateFactorization<G> factor_three_g_commutators(const CommutatorWord<G>& word, const G& g,
                                                     const ConjugatingOracle<G>& oracle) {
  G id = identity_like(g);
  ConjugateFactorization<G> out;
  out.base = g;
  out.target = word.evaluate(id);
  out.claimed_bound = 6;
  if (word.empty()) {
    check_internal(out.verify(), "factor_three_g_commutators: empty word");
    return out;
  }

  const int k = static_cast<int>(word.size());
  auto [w1, h1] = oracle(word.entries(), std::max(1, k - 1));
  check_internal(h1 == conjugate(g, w1), "factor_three_g_commutators: oracle conjugate is off");
  MergedWord<G> m = merge_commutator_word(word, h1);

  auto [w2, h2] = oracle({m.alpha, m.beta}, 1);
  check_internal(h2 == conjugate(g, w2), "factor_three_g_commutators: oracle conjugate is off");
  ConjugateFactorization<G> expansion = expand_commutator(m.alpha, m.beta, h2);
  for (const auto& f : expansion.factors)
    out.factors.push_back({compose(f.conjugator, w2), f.sign, std::nullopt});

  if (!(m.gamma == id)) {
    // [gamma, h1] = (^{gamma} h1) h1^-1 with h1 = ^{w1} g.
    out.factors.push_back({compose(m.gamma, w1), +1, std::nullopt});
    out.factors.push_back({w1, -1, std::nullopt});
  }
  check_internal(static_cast<int>(out.factors.size()) <= 6,
                 "factor_three_g_commutators: factor bound exceeded");
  check_internal(out.verify(), "factor_three_g_commutators: product mismatch");
  return out;
}

// With g displacing the ambient subgroup that carries the word, and an
// inner oracle displacing inside it, every product of commutators becomes
// at most eight g-conjugates (two expanded commutators). In strict mode the
// two commutators are first rewritten inside the derived subgroup, so every
// conjugator carries a commutator-word witness.
template <GroupElement G>
ConjugateFactorization<G> factor_four_g_commutators(const CommutatorWord<G>& word, const G& g,
                                                    const DisplacementOracle<G>& inner_oracle,
                                                    bool strict) {
  G id = identity_like(g);
  ConjugateFactorization<G> out;
  out.base = g;
  out.target = word.evaluate(id);
  out.claimed_bound = 8;
  if (word.empty()) {
    check_internal(out.verify(), "factor_four_g_commutators: empty word");
    return out;
  }

  std::vector<G> entries = word.entries();
  require(is_k_displacing(g, entries, 1),
          "factor_four_g_commutators: g does not displace the word entries");

  const int k = static_cast<int>(word.size());
  Witnessed<G> h = inner_oracle(entries, std::max(1, k - 1));
  check_internal(h.verify(), "factor_four_g_commutators: inner displacer witness is broken");
  MergedWord<G> m = merge_commutator_word(word, h.element);

  std::vector<std::pair<Witnessed<G>, Witnessed<G>>> pairs;
  if (strict) {
    pairs.push_back(rewrite_in_derived(m.alpha, m.beta, inner_oracle));
    pairs.push_back(rewrite_in_derived(m.gamma, h.element, inner_oracle));
  } else {
    pairs.push_back({Witnessed<G>{m.alpha, {}}, Witnessed<G>{m.beta, {}}});
    pairs.push_back({Witnessed<G>{m.gamma, {}}, Witnessed<G>{h.element, {}}});
  }

  for (const auto& [x, y] : pairs) {
    if (commutator(x.element, y.element) == id) continue;
    ConjugateFactorization<G> expansion = expand_commutator(x.element, y.element, g);
    if (strict) {
      expansion.factors[0].conjugator_witness = x.witness.concat(y.witness);
      expansion.factors[1].conjugator_witness = x.witness;
      expansion.factors[2].conjugator_witness = CommutatorWord<G>{};
      expansion.factors[3].conjugator_witness = y.witness;
    }
    for (auto& f : expansion.factors) out.factors.push_back(std::move(f));
  }

  check_internal(static_cast<int>(out.factors.size()) <= 8,
                 "factor_four_g_commutators: factor bound exceeded");
  check_internal(out.verify(), "factor_four_g_commutators: product mismatch");
  if (strict) {
    for (const auto& f : out.factors) {
      check_internal(f.conjugator_witness.has_value() &&
                         f.conjugator_witness->evaluate(id) == f.conjugator,
                     "factor_four_g_commutators: conjugator witness fails to re-verify");
    }
  }
  return out;
}

}  // namespace simpcert
