#pragma once

// Symbolic carrier for validating the displacement identities universally:
// the wreath-type group (direct sum over Z of a free group F_X) extended by
// the index shift. The shift infinitely displaces the slot-0 copy of F_X,
// and no other relations hold, so an identity that reduces to the trivial
// element here holds in every group with a displacing element.

#include <map>
#include <vector>

#include "simpcert/error.hpp"

namespace simpcert::testutil {

// Freely reduced word; letters are nonzero ints, -x is the inverse of x.
using FreeWord = std::vector<int>;

inline FreeWord free_concat(const FreeWord& a, const FreeWord& b) {
  FreeWord r = a;
  for (int x : b) {
    if (!r.empty() && r.back() == -x)
      r.pop_back();
    else
      r.push_back(x);
  }
  return r;
}

inline FreeWord free_invert(const FreeWord& a) {
  FreeWord r;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r.push_back(-*it);
  return r;
}

struct FreeDisplacementElem {
  std::map<long long, FreeWord> slots;  // nonempty reduced words only
  long long shift = 0;

  static FreeDisplacementElem identity() { return {}; }

  static FreeDisplacementElem generator(int letter) {
    FreeDisplacementElem e;
    e.slots[0] = {letter};
    return e;
  }

  static FreeDisplacementElem shifter(long long amount) {
    FreeDisplacementElem e;
    e.shift = amount;
    return e;
  }

  friend bool operator==(const FreeDisplacementElem& a, const FreeDisplacementElem& b) {
    return a.shift == b.shift && a.slots == b.slots;
  }
};

inline FreeDisplacementElem compose(const FreeDisplacementElem& a, const FreeDisplacementElem& b) {
  FreeDisplacementElem r;
  r.shift = a.shift + b.shift;
  r.slots = a.slots;
  for (const auto& [j, w] : b.slots) {
    long long slot = j + a.shift;  // a's shift relocates b's supports
    auto it = r.slots.find(slot);
    if (it == r.slots.end()) {
      r.slots[slot] = w;
    } else {
      it->second = free_concat(it->second, w);
      if (it->second.empty()) r.slots.erase(it);
    }
  }
  return r;
}

inline FreeDisplacementElem inverse(const FreeDisplacementElem& a) {
  FreeDisplacementElem r;
  r.shift = -a.shift;
  for (const auto& [j, w] : a.slots) r.slots[j - a.shift] = free_invert(w);
  return r;
}

inline FreeDisplacementElem identity_like(const FreeDisplacementElem&) {
  return FreeDisplacementElem::identity();
}

inline FreeDisplacementElem conjugate(const FreeDisplacementElem& g,
                                      const FreeDisplacementElem& w) {
  return compose(compose(w, g), inverse(w));
}

inline FreeDisplacementElem commutator(const FreeDisplacementElem& g,
                                       const FreeDisplacementElem& h) {
  return compose(compose(compose(g, h), inverse(g)), inverse(h));
}

}  // namespace simpcert::testutil
