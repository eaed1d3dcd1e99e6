#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "simpcert/plmap.hpp"
#include "simpcert/rng.hpp"

using namespace simpcert;

namespace {

QRational qr(long long m, long long k, int q) { return QRational::make(m, k, q); }

// Standard generator supported on [0,1]: slopes 1/2, 1, 2.
PLMap gen_x0() {
  return PLMap::validate(2, {{qr(0, 0, 2), qr(0, 0, 2)},
                             {qr(1, 1, 2), qr(1, 2, 2)},
                             {qr(3, 2, 2), qr(1, 1, 2)},
                             {qr(1, 0, 2), qr(1, 0, 2)}});
}

// Copy of gen_x0 squeezed into [1/2, 1].
PLMap gen_x1() {
  return PLMap::validate(2, {{qr(1, 1, 2), qr(1, 1, 2)},
                             {qr(3, 2, 2), qr(5, 3, 2)},
                             {qr(7, 3, 2), qr(3, 2, 2)},
                             {qr(1, 0, 2), qr(1, 0, 2)}});
}

PLMap random_plmap(Rng& rng, int q, int pieces = 2) {
  PLMap g = PLMap::identity(q);
  for (int i = 0; i < pieces; ++i) {
    long long base = rng.range(-4, 3);
    long long w1 = rng.range(1, 3), w2 = rng.range(1, 3);
    QRational a = QRational::integer(base * (q - 1), q);
    QRational b = a + QRational::integer(w1 * (q - 1), q);
    QRational c = QRational::integer(rng.range(-4, 3) * (q - 1), q);
    QRational d = c + QRational::integer(w2 * (q - 1), q);
    g = compose(g, move_interval(a, b, c, d));
  }
  return g;
}

QRational random_point(Rng& rng, int q) {
  return qr(rng.range(-50, 50), rng.range(0, 4), q);
}

}  // namespace

TEST_CASE("validation accepts the standard table and canonicalises") {
  PLMap g = gen_x0();
  CHECK(g.table().size() == 4);
  // identity-looking tables collapse
  CHECK(PLMap::validate(2, {{qr(0, 0, 2), qr(0, 0, 2)}, {qr(1, 0, 2), qr(1, 0, 2)}}).is_identity());
  // redundant collinear breakpoint disappears
  PLMap h = PLMap::validate(2, {{qr(0, 0, 2), qr(0, 0, 2)},
                                {qr(1, 2, 2), qr(1, 3, 2)},
                                {qr(1, 1, 2), qr(1, 2, 2)},
                                {qr(3, 2, 2), qr(1, 1, 2)},
                                {qr(1, 0, 2), qr(1, 0, 2)}});
  CHECK(h == gen_x0());
}

TEST_CASE("validation rejects bad tables") {
  // non-monotone
  CHECK_THROWS_AS(PLMap::validate(2, {{qr(0, 0, 2), qr(0, 0, 2)},
                                      {qr(1, 0, 2), qr(1, 1, 2)}}),
                  Error);
  // slope 3 is not a power of 2
  CHECK_THROWS_AS(PLMap::validate(2, {{qr(0, 0, 2), qr(0, 0, 2)},
                                      {qr(1, 0, 2), qr(3, 0, 2)},
                                      {qr(2, 0, 2), qr(2, 0, 2)}}),
                  Error);
  // unbalanced endpoints
  CHECK_THROWS_AS(PLMap::validate(2, {{qr(0, 0, 2), qr(1, 1, 2)},
                                      {qr(1, 0, 2), qr(1, 0, 2)}}),
                  Error);
  // a breakpoint image outside Z[1/2] only arises from text input
  CHECK_THROWS_AS(PLMap::from_text("plmap q=2\n0 -> 0\n1/2^1 -> 1/3\n1 -> 1\n"), Error);
}

TEST_CASE("evaluation on the standard generator") {
  PLMap g = gen_x0();
  CHECK(g.eval(qr(1, 1, 2)) == qr(1, 2, 2));   // breakpoint lookup
  CHECK(g.eval(qr(2, 0, 2)) == qr(2, 0, 2));   // identity outside support
  CHECK(g.eval(qr(7, 3, 2)) == qr(3, 2, 2));   // last piece has slope 2
  CHECK(g.eval_inverse(qr(1, 2, 2)) == qr(1, 1, 2));
}

TEST_CASE("compose, invert, commutator basics") {
  PLMap g = gen_x0();
  CHECK(compose(g, inverse(g)).is_identity());
  CHECK(commutator(g, PLMap::identity(2)).is_identity());
  CHECK(inverse(inverse(g)) == g);
}

TEST_CASE("composition agrees with pointwise evaluation on a dense grid") {
  PLMap a = gen_x0(), b = gen_x1();
  PLMap c = compose(a, b);
  for (int i = -10; i < 110; ++i) {
    QRational x = qr(i, 5, 2);  // i/32: resolves every piece
    CHECK(c.eval(x) == a.eval(b.eval(x)));
  }
  Rng rng(23);
  for (int q : {2, 3}) {
    for (int it = 0; it < 20; ++it) {
      PLMap f = random_plmap(rng, q), g2 = random_plmap(rng, q);
      PLMap gf = compose(g2, f);
      for (int j = 0; j < 100; ++j) {
        QRational x = random_point(rng, q);
        CHECK(gf.eval(x) == g2.eval(f.eval(x)));
      }
    }
  }
}

TEST_CASE("group axioms on random triples") {
  Rng rng(29);
  for (int q : {2, 3, 5}) {
    for (int it = 0; it < 25; ++it) {
      PLMap a = random_plmap(rng, q), b = random_plmap(rng, q), c = random_plmap(rng, q);
      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
      CHECK(compose(a, inverse(a)).is_identity());
      CHECK(compose(inverse(a), a).is_identity());
    }
  }
}

TEST_CASE("every map displaces points by an ideal element") {
  Rng rng(31);
  for (int q : {2, 3, 5}) {
    for (int it = 0; it < 40; ++it) {
      PLMap g = random_plmap(rng, q);
      for (int j = 0; j < 25; ++j) {
        QRational x = random_point(rng, q);
        CHECK((g.eval(x) - x).in_ideal());
        // consequence: the ideal itself is invariant
        QRational xi = x * QRational::integer(q - 1, q);
        CHECK(g.eval(xi).in_ideal());
      }
    }
  }
}

TEST_CASE("support bounds sit in the ideal just outside the table hull") {
  CHECK(!support_bounds(PLMap::identity(2)).has_value());
  PLMap g = gen_x0();
  auto b = support_bounds(g);
  REQUIRE(b.has_value());
  CHECK(b->lo.in_ideal());
  CHECK(b->hi.in_ideal());
  CHECK(b->lo < qr(0, 0, 2));
  CHECK(b->hi > qr(1, 0, 2));
  CHECK(b->lo == qr(-1, 1, 2));  // scale-2 grid point in (-1, 0)
  CHECK(b->hi == qr(3, 1, 2));

  // q=3 example with support in (0, 4): endpoints land in 2 Z[1/3]
  PLMap h = move_interval(qr(0, 0, 3), qr(2, 0, 3), qr(0, 0, 3), qr(4, 0, 3));
  auto bh = support_bounds(h);
  REQUIRE(bh.has_value());
  CHECK(bh->lo.in_ideal());
  CHECK(bh->hi.in_ideal());
  CHECK(bh->lo < h.table().front().first);
  CHECK(bh->hi > h.table().back().first);
}

TEST_CASE("interp_build constructs verified pieces") {
  int q = 2;
  // identity piece
  PLPiece p = interp_build(qr(0, 0, q), qr(1, 0, q), qr(0, 0, q), qr(1, 0, q));
  CHECK(p.front() == std::make_pair(qr(0, 0, q), qr(0, 0, q)));
  CHECK(p.back() == std::make_pair(qr(1, 0, q), qr(1, 0, q)));
  // single slope-2 piece
  p = interp_build(qr(0, 0, q), qr(1, 0, q), qr(0, 0, q), qr(2, 0, q));
  CHECK(p.size() == 2);
  // q=3, [0,1] -> [0,5]: 5-1 = 4 lies in 2 Z[1/3]
  q = 3;
  p = interp_build(qr(0, 0, q), qr(1, 0, q), qr(0, 0, q), qr(5, 0, q));
  CHECK(p.front().second == qr(0, 0, q));
  CHECK(p.back().second == qr(5, 0, q));
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    auto t = power_of_q_ratio(p[i + 1].second - p[i].second, p[i + 1].first - p[i].first);
    CHECK(t.has_value());
  }
}

TEST_CASE("interp_build precondition is exactly the ideal congruence") {
  Rng rng(37);
  for (int q : {3, 5}) {
    int built = 0, rejected = 0;
    for (int it = 0; it < 200; ++it) {
      QRational x1 = qr(rng.range(-8, 8), rng.range(0, 2), q);
      QRational x2 = x1 + qr(rng.range(1, 12), rng.range(0, 2), q);
      QRational y1 = qr(rng.range(-8, 8), rng.range(0, 2), q);
      QRational y2 = y1 + qr(rng.range(1, 12), rng.range(0, 2), q);
      bool ok = ((y2 - y1) - (x2 - x1)).in_ideal();
      if (ok) {
        PLPiece p = interp_build(x1, x2, y1, y2);
        CHECK(p.front().first == x1);
        CHECK(p.back().second == y2);
        ++built;
      } else {
        CHECK_THROWS_AS(interp_build(x1, x2, y1, y2), Error);
        ++rejected;
      }
    }
    CHECK(built > 0);
    CHECK(rejected > 0);
  }
}

TEST_CASE("move_interval covers the target") {
  int q = 2;
  CHECK(move_interval(qr(0, 0, q), qr(1, 0, q), qr(0, 0, q), qr(1, 0, q)).is_identity());
  PLMap g = move_interval(qr(0, 0, q), qr(1, 0, q), qr(-1, 0, q), qr(2, 0, q));
  CHECK(g.eval(qr(0, 0, q)) <= qr(-1, 0, q));
  CHECK(g.eval(qr(1, 0, q)) >= qr(2, 0, q));

  q = 3;
  PLMap h = move_interval(qr(0, 0, q), qr(2, 0, q), qr(-2, 0, q), qr(4, 0, q));
  CHECK(h.eval(qr(0, 0, q)) <= qr(-2, 0, q));
  CHECK(h.eval(qr(2, 0, q)) >= qr(4, 0, q));

  CHECK_THROWS_AS(move_interval(qr(1, 1, 3), qr(2, 0, 3), qr(0, 0, 3), qr(2, 0, 3)), Error);

  Rng rng(41);
  for (int qq : {2, 3, 5}) {
    for (int it = 0; it < 50; ++it) {
      long long s = qq - 1;
      QRational a = QRational::integer(rng.range(-5, 4) * s, qq);
      QRational b = a + QRational::integer(rng.range(1, 4) * s, qq);
      QRational c = QRational::integer(rng.range(-5, 4) * s, qq);
      QRational d = c + QRational::integer(rng.range(1, 4) * s, qq);
      PLMap g2 = move_interval(a, b, c, d);
      CHECK(g2.eval(a) <= c);
      CHECK(g2.eval(b) >= d);
    }
  }
}

TEST_CASE("order_displacer separates iterated images") {
  CHECK(order_displacer(Interval(qr(0, 0, 2), qr(1, 0, 2)), 0).is_identity());

  auto check_displacer = [](int q, const QRational& a, const QRational& b, int K) {
    PLMap h = order_displacer(Interval(a, b), K);
    std::vector<std::pair<QRational, QRational>> images;
    QRational lo = a, hi = b;
    for (int j = 0; j <= K; ++j) {
      images.emplace_back(lo, hi);
      lo = h.eval(lo);
      hi = h.eval(hi);
    }
    for (std::size_t i = 0; i < images.size(); ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j) {
        bool disjoint = images[i].second <= images[j].first || images[j].second <= images[i].first;
        CHECK(disjoint);
      }
  };
  check_displacer(2, qr(0, 0, 2), qr(1, 0, 2), 3);
  check_displacer(3, qr(0, 0, 3), qr(2, 0, 3), 2);
  check_displacer(5, qr(4, 0, 5), qr(8, 0, 5), 4);
}

TEST_CASE("text round-trip") {
  CHECK(PLMap::identity(2).to_text() == "plmap q=2\n");
  CHECK(PLMap::from_text("plmap q=2\n").is_identity());
  Rng rng(43);
  for (int q : {2, 3}) {
    for (int it = 0; it < 30; ++it) {
      PLMap g = random_plmap(rng, q);
      CHECK(PLMap::from_text(g.to_text()) == g);
    }
  }
  CHECK_THROWS_AS(PLMap::from_text("plmap 2\n"), Error);
  CHECK_THROWS_AS(PLMap::from_text("plmap q=2\n0 0\n"), Error);
}

TEST_CASE("fqr tagging") {
  PLMap g3 = move_interval(qr(0, 0, 3), qr(2, 0, 3), qr(0, 0, 3), qr(2, 1, 3));
  // support of g3 spills outside (0, 2): rejected for r = 2
  CHECK_THROWS_AS(make_fqr(g3, 2), Error);
  CHECK_THROWS_AS(make_fqr(PLMap::identity(3), 3), Error);  // r >= q
  FqrMap ok = make_fqr(PLMap::identity(3), 2);
  CHECK(ok.map.is_identity());
  // a small bump inside (0, 2) passes
  PLMap bump = glue_pieces(3, {interp_build(qr(0, 0, 3), qr(1, 1, 3), qr(0, 0, 3), qr(1, 0, 3)),
                               interp_build(qr(1, 1, 3), qr(2, 0, 3), qr(1, 0, 3), qr(2, 0, 3))});
  CHECK(!bump.is_identity());
  CHECK_NOTHROW(make_fqr(bump, 2));
}
