#include "simpcert/plmap.hpp"

#include <algorithm>
#include <sstream>

namespace simpcert {

namespace {

// Slope of the segment between two table points, which must be q^t.
long long segment_slope(const std::pair<QRational, QRational>& p0,
                        const std::pair<QRational, QRational>& p1) {
  QRational dx = p1.first - p0.first;
  QRational dy = p1.second - p0.second;
  auto t = power_of_q_ratio(dy, dx);
  require(t.has_value(), "PLMap: slope between " + p0.first.to_string() + " and " +
                             p1.first.to_string() + " is not a power of q");
  return *t;
}

}  // namespace

PLMap PLMap::validate(int q, Table table) {
  require(q >= 2, "PLMap: base q must be at least 2");
  for (const auto& [x, y] : table)
    require(x.base() == q && y.base() == q, "PLMap: table entry base differs from q");
  for (std::size_t i = 0; i + 1 < table.size(); ++i) {
    require(table[i].first < table[i + 1].first, "PLMap: breakpoints must increase strictly");
    require(table[i].second < table[i + 1].second, "PLMap: images must increase strictly");
  }
  if (!table.empty()) {
    require(table.front().second == table.front().first,
            "PLMap: unbalanced left endpoint (y_0 != x_0)");
    require(table.back().second == table.back().first,
            "PLMap: unbalanced right endpoint (y_n != x_n)");
    for (std::size_t i = 0; i + 1 < table.size(); ++i)
      segment_slope(table[i], table[i + 1]);  // throws if not a power of q
  }

  // Drop redundant breakpoints; the region outside the table is slope 1.
  bool changed = true;
  while (changed) {
    changed = false;
    if (table.size() == 1) {
      table.clear();
      break;
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
      long long left = (i == 0) ? 0 : segment_slope(table[i - 1], table[i]);
      long long right = (i + 1 == table.size()) ? 0 : segment_slope(table[i], table[i + 1]);
      if (left == right) {
        table.erase(table.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }

  PLMap g;
  g.q_ = q;
  g.table_ = std::move(table);
  return g;
}

QRational PLMap::eval(const QRational& x) const {
  require(x.base() == q_, "PLMap::eval: point base differs from map base");
  if (table_.empty() || x <= table_.front().first || x >= table_.back().first) return x;
  // Last breakpoint with x_i <= x.
  std::size_t lo = 0, hi = table_.size() - 1;
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (table_[mid].first <= x)
      lo = mid;
    else
      hi = mid;
  }
  long long t = segment_slope(table_[lo], table_[lo + 1]);
  return table_[lo].second + (x - table_[lo].first).times_pow_q(t);
}

QRational PLMap::eval_inverse(const QRational& y) const {
  require(y.base() == q_, "PLMap::eval_inverse: point base differs from map base");
  if (table_.empty() || y <= table_.front().second || y >= table_.back().second) return y;
  std::size_t lo = 0, hi = table_.size() - 1;
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (table_[mid].second <= y)
      lo = mid;
    else
      hi = mid;
  }
  long long t = segment_slope(table_[lo], table_[lo + 1]);
  return table_[lo].first + (y - table_[lo].second).times_pow_q(-t);
}

PLMap inverse(const PLMap& g) {
  PLMap::Table t;
  t.reserve(g.table().size());
  for (const auto& [x, y] : g.table()) t.emplace_back(y, x);
  return PLMap::validate(g.base(), std::move(t));
}

PLMap compose(const PLMap& g, const PLMap& f) {
  require(g.base() == f.base(), "compose: mismatched base q");
  std::vector<QRational> xs;
  for (const auto& [x, y] : f.table()) xs.push_back(x);
  for (const auto& [x, y] : g.table()) xs.push_back(f.eval_inverse(x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  PLMap::Table t;
  t.reserve(xs.size());
  for (const auto& x : xs) t.emplace_back(x, g.eval(f.eval(x)));
  return PLMap::validate(g.base(), std::move(t));
}

PLMap conjugate(const PLMap& g, const PLMap& w) {
  return compose(compose(w, g), inverse(w));
}

PLMap commutator(const PLMap& g, const PLMap& h) {
  return compose(compose(compose(g, h), inverse(g)), inverse(h));
}

std::optional<Interval> support_bounds(const PLMap& g) {
  if (g.is_identity()) return std::nullopt;
  const QRational& x0 = g.table().front().first;
  const QRational& xn = g.table().back().first;
  QRational one = QRational::one(g.base());
  return Interval(between(x0 - one, x0, true), between(xn, xn + one, true));
}

std::optional<Interval> support_bounds(const std::vector<PLMap>& gs) {
  std::optional<Interval> acc;
  for (const PLMap& g : gs) {
    auto b = support_bounds(g);
    if (!b) continue;
    if (!acc)
      acc = b;
    else
      acc = Interval(std::min(acc->lo, b->lo), std::max(acc->hi, b->hi));
  }
  return acc;
}

namespace {

// Increasing bijection [0,l1] -> [0,l2] with power-of-q slopes. Strategy:
// rescale globally until the length deficit fits inside the domain, then a
// single slope-q (or slope-1/q) cell followed by a translation.
PLMap::Table build_lengths(int q, const QRational& l1, const QRational& l2, int depth) {
  check_internal(depth < 512, "interp_build: rescaling runaway");
  QRational zero = QRational::zero(q);
  QRational t = (l2 - l1).div_exact(q - 1);

  if (t.is_zero()) return {{zero, zero}, {l1, l2}};

  if (!(t < zero)) {
    if (t <= l1) {
      if (t == l1) return {{zero, zero}, {l1, l2}};  // one slope-q cell
      return {{zero, zero}, {t, t.times_pow_q(1)}, {l1, l2}};
    }
    PLMap::Table r = build_lengths(q, l1.times_pow_q(1), l2, depth + 1);
    for (auto& [x, y] : r) x = x.times_pow_q(-1);
    return r;
  }

  QRational s = (-t).times_pow_q(1);
  if (s <= l1) {
    if (s == l1) return {{zero, zero}, {l1, l2}};  // one slope-1/q cell
    return {{zero, zero}, {s, -t}, {l1, l2}};
  }
  PLMap::Table r = build_lengths(q, l1.times_pow_q(-1), l2, depth + 1);
  for (auto& [x, y] : r) x = x.times_pow_q(1);
  return r;
}

}  // namespace

PLPiece interp_build(const QRational& x1, const QRational& x2, const QRational& y1,
                     const QRational& y2) {
  int q = x1.base();
  require(x1 < x2 && y1 < y2, "interp_build: intervals must be nondegenerate");
  QRational deficit = (y2 - y1) - (x2 - x1);
  require(deficit.in_ideal(),
          "interp_build: length difference " + deficit.to_string() + " is not in the ideal (q-1)Z[1/q]");

  PLPiece piece = build_lengths(q, x2 - x1, y2 - y1, 0);
  for (auto& [x, y] : piece) {
    x = x + x1;
    y = y + y1;
  }
  check_internal(piece.front().first == x1 && piece.front().second == y1 &&
                     piece.back().first == x2 && piece.back().second == y2,
                 "interp_build: endpoints do not match");
  for (std::size_t i = 0; i + 1 < piece.size(); ++i) segment_slope(piece[i], piece[i + 1]);
  return piece;
}

PLMap glue_pieces(int q, const std::vector<PLPiece>& pieces) {
  PLMap::Table t;
  for (const PLPiece& p : pieces) {
    for (const auto& pt : p) {
      if (!t.empty() && t.back().first == pt.first) {
        check_internal(t.back().second == pt.second, "glue_pieces: pieces disagree at a junction");
        continue;
      }
      t.push_back(pt);
    }
  }
  return PLMap::validate(q, std::move(t));
}

PLMap move_interval(const QRational& a, const QRational& b, const QRational& c,
                    const QRational& d) {
  int q = a.base();
  require(a < b && c < d, "move_interval: degenerate interval");
  require(a.in_ideal() && b.in_ideal() && c.in_ideal() && d.in_ideal(),
          "move_interval: endpoints must lie in the ideal (q-1)Z[1/q]");

  QRational p = QRational::integer(std::min(a, c).floor() - 2, q);
  QRational r = QRational::integer(std::max(b, d).ceil() + 2, q);

  std::vector<PLPiece> pieces;
  pieces.push_back(interp_build(p, a, p, c));
  pieces.push_back(interp_build(a, b, c, d));
  pieces.push_back(interp_build(b, r, d, r));
  PLMap g = glue_pieces(q, pieces);
  check_internal(g.eval(a) == c && g.eval(b) == d, "move_interval: endpoint images are off");
  return g;
}

PLMap order_displacer(const Interval& J, int K) {
  int q = J.lo.base();
  require(J.lo.in_ideal() && J.hi.in_ideal(),
          "order_displacer: interval endpoints must lie in the ideal");
  if (K <= 0) return PLMap::identity(q);

  const QRational a = J.lo;
  const QRational step = J.hi - J.lo;
  auto s = [&](int j) { return a + step * QRational::integer(j, q); };  // s(1) = J.hi

  QRational f = QRational::integer(a.floor() - 2, q);
  QRational r = QRational::integer(s(K + 2).ceil() + 2, q);

  std::vector<PLPiece> pieces;
  pieces.push_back(interp_build(f, s(0), f, s(1)));
  for (int j = 0; j < K; ++j) pieces.push_back(interp_build(s(j), s(j + 1), s(j + 1), s(j + 2)));
  pieces.push_back(interp_build(s(K), r, s(K + 1), r));
  PLMap h = glue_pieces(q, pieces);

  for (int j = 0; j <= K; ++j)
    check_internal(h.eval(s(j)) == s(j + 1), "order_displacer: step image is off");
  return h;
}

FqrMap make_fqr(PLMap map, int r) {
  int q = map.base();
  require(1 <= r && r < q, "FqrMap: need 1 <= r < q");
  if (!map.is_identity()) {
    require(map.table().front().first >= QRational::zero(q) &&
                map.table().back().first <= QRational::integer(r, q),
            "FqrMap: support must be contained in (0, r)");
  }
  return FqrMap{std::move(map), r};
}

std::string PLMap::to_text() const {
  std::ostringstream os;
  os << "plmap q=" << q_ << "\n";
  for (const auto& [x, y] : table_) os << x.to_string() << " -> " << y.to_string() << "\n";
  return os.str();
}

PLMap PLMap::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), "plmap: empty input");
  int q = 0;
  {
    std::istringstream hs(line);
    std::string word, qeq;
    hs >> word >> qeq;
    require(word == "plmap" && qeq.rfind("q=", 0) == 0, "plmap: bad header '" + line + "'");
    try {
      q = std::stoi(qeq.substr(2));
    } catch (const std::exception&) {
      throw Error("plmap: bad base in header '" + line + "'");
    }
  }
  Table t;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto arrow = line.find("->");
    require(arrow != std::string::npos, "plmap: expected 'x -> y' but got '" + line + "'");
    QRational x = parse_qrational(line.substr(0, arrow), q);
    QRational y = parse_qrational(line.substr(arrow + 2), q);
    t.emplace_back(std::move(x), std::move(y));
  }
  return validate(q, std::move(t));
}

}  // namespace simpcert
