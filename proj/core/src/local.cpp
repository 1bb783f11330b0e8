#include "hyperpts/curve.hpp"

#include "mpoly.hpp"

#include <algorithm>
#include <climits>

namespace hyperpts {

namespace {

constexpr std::size_t kMaxRefutationLeaves = 4096;
// Above this prime a node scans only a prefix of the residues.
constexpr std::uint64_t kFullScanPrime = 1u << 20;
constexpr std::uint64_t kPartialScan = 1u << 16;

int val_or_inf(const Int& a, std::uint64_t p) { return a == 0 ? INT_MAX : valuation(a, p); }

bool unit_square(const Int& unit, std::uint64_t p) {
  if (p == 2) return mod_of(unit, 8) == 1;
  return legendre(mod_of(unit, p), p) == 1;
}

/// Square class of p^parity * a.
SquareVerdict class_of(const Int& a, int parity, std::uint64_t p) {
  if (a == 0) return SquareVerdict::Zero;
  Int u = a;
  int v = remove_factor(u, p) + parity;
  if (v % 2 != 0) return SquareVerdict::NonSquare;
  return unit_square(u, p) ? SquareVerdict::Square : SquareVerdict::NonSquare;
}

/// Strips the largest power of p dividing every coefficient.
IPoly strip(const IPoly& g, std::uint64_t p, int& removed) {
  removed = INT_MAX;
  for (const Int& c : g.coeffs())
    if (c != 0) removed = std::min(removed, valuation(c, p));
  if (removed == INT_MAX || removed == 0) {
    removed = removed == INT_MAX ? 0 : removed;
    return g;
  }
  Int d = pow_int(Int(static_cast<unsigned long>(p)), removed);
  std::vector<Int> co;
  for (const Int& c : g.coeffs()) co.push_back(c / d);
  return IPoly(co);
}

int even_degree(const IPoly& g) { return 2 * ((std::max(g.degree(), 0) + 1) / 2); }

std::vector<IPoly> chart_polys(const std::vector<IPoly>& polys, Chart chart) {
  if (chart == Chart::Affine) return polys;
  std::vector<IPoly> out;
  for (const IPoly& g : polys) out.push_back(g.reversed(even_degree(g)));
  return out;
}

enum class DiscClass { Constant, Hensel, Open };

struct Classified {
  DiscClass kind;
  SquareVerdict constant_class;  // when Constant
};

Classified classify(const IPoly& h, int parity, std::uint64_t p) {
  const Int c0 = h.coeff(0);
  const int v0 = val_or_inf(c0, p);
  int rest = INT_MAX;
  for (int j = 1; j <= h.degree(); ++j)
    if (h.coeff(j) != 0) rest = std::min(rest, valuation(h.coeff(j), p));
  const int margin = p == 2 ? 3 : 1;
  if (c0 != 0 && (rest == INT_MAX || rest >= v0 + margin)) return {DiscClass::Constant, class_of(c0, parity, p)};
  const Int c1 = h.coeff(1);
  if (c1 != 0 && (v0 == INT_MAX || v0 > 2 * valuation(c1, p))) return {DiscClass::Hensel, SquareVerdict::Zero};
  return {DiscClass::Open, SquareVerdict::Zero};
}

class DiscSearch {
 public:
  DiscSearch(const std::vector<IPoly>& polys, std::uint64_t p, int cap) : polys_(polys), p_(p), cap_(cap) {
    out_.place = p;
    out_.depth_cap = cap;
  }

  LocalVerdict run() {
    for (Chart chart : {Chart::Affine, Chart::Inverted}) {
      chart_ = chart;
      chart_polys_ = chart_polys(polys_, chart);
      std::vector<IPoly> g;
      std::vector<int> parity;
      const Int p = static_cast<unsigned long>(p_);
      for (const IPoly& q : chart_polys_) {
        int e = 0;
        g.push_back(strip(chart == Chart::Affine ? q : q.compose_affine(0, p), p_, e));
        parity.push_back(e % 2);
      }
      if (explore(g, parity, Int(0), chart == Chart::Affine ? 0 : 1, 0)) {
        out_.solvable = true;
        return out_;
      }
    }
    return out_;
  }

 private:
  Int power(int k) const { return pow_int(Int(static_cast<unsigned long>(p_)), k); }

  bool accept_center(const Int& coordinate) {
    std::vector<SquareVerdict> ev;
    for (const IPoly& q : chart_polys_) {
      SquareVerdict c = square_verdict(Rat(q(coordinate)), p_);
      if (c == SquareVerdict::NonSquare) return false;
      ev.push_back(c);
    }
    LocalWitness w;
    w.place = p_;
    w.chart = chart_;
    w.coordinate = Rat(coordinate);
    w.kind = WitnessKind::SquareValue;
    w.evidence = std::move(ev);
    out_.witness = std::move(w);
    return true;
  }

  void accept_hensel(const Int& coordinate, int level, int poly) {
    LocalWitness w;
    w.place = p_;
    w.chart = chart_;
    w.coordinate = Rat(coordinate);
    w.kind = WitnessKind::HenselRoot;
    w.level = level;
    w.poly = poly;
    for (const IPoly& q : chart_polys_) w.evidence.push_back(square_verdict(Rat(q(coordinate)), p_));
    out_.witness = std::move(w);
  }

  void refute(const Int& center, int level, int poly) {
    if (out_.refutation.size() >= kMaxRefutationLeaves) {
      out_.refutation_truncated = true;
      return;
    }
    out_.refutation.push_back({chart_, center, level, poly});
  }

  /// Coordinates base + p^k t, t in Z_p; the value of polynomial i there is
  /// p^(e_i) * g[i](t) with e_i = parity[i] mod 2.
  bool explore(const std::vector<IPoly>& g, const std::vector<int>& parity, const Int& base, int k, int depth) {
    ++out_.nodes;
    out_.max_depth = std::max(out_.max_depth, depth);
    const Int pk = power(k);
    const std::size_t n = g.size();

    // residues needing a child node
    std::vector<std::uint64_t> open;
    if (p_ == 2) {
      open = {0, 1};
      for (std::uint64_t r : open)
        if (accept_center(base + pk * static_cast<unsigned long>(r))) return true;
    } else {
      std::vector<detail::MPoly> red;
      for (const IPoly& q : g) red.push_back(detail::mreduce(q, p_));
      bool any_odd = std::any_of(parity.begin(), parity.end(), [](int e) { return e % 2 != 0; });
      auto eval = [&](const detail::MPoly& m, std::uint64_t r) {
        std::uint64_t acc = 0;
        for (std::size_t i = m.size(); i-- > 0;) acc = (mulmod(acc, r, p_) + m[i]) % p_;
        return acc;
      };
      const bool full = p_ <= kFullScanPrime;
      if (full) {
        for (std::uint64_t r = 0; r < p_; ++r) {
          bool root = false, square = true;
          int bad = -1;
          for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t v = eval(red[i], r);
            if (v == 0) root = true;
            else if (parity[i] != 0 || legendre(v, p_) != 1) {
              square = false;
              if (bad < 0) bad = static_cast<int>(i);
            }
          }
          const Int center = base + pk * static_cast<unsigned long>(r);
          if (root) {
            if (accept_center(center)) return true;
            if (square || bad < 0) open.push_back(r);
            else refute(center, k + 1, bad);
          } else if (square) {
            if (accept_center(center)) return true;
          } else {
            refute(center, k + 1, bad);
          }
        }
      } else {
        // huge bad prime: nodes need only the roots of the reductions, and a
        // smooth square residue turns up quickly unless some parity is odd
        for (const auto& m : red)
          for (std::uint64_t r : detail::roots_mod_p(m, p_)) open.push_back(r);
        std::sort(open.begin(), open.end());
        open.erase(std::unique(open.begin(), open.end()), open.end());
        for (std::uint64_t r : open)
          if (accept_center(base + pk * static_cast<unsigned long>(r))) return true;
        if (!any_odd) {
          for (std::uint64_t r = 0; r < kPartialScan; ++r) {
            bool square = true;
            for (std::size_t i = 0; i < n && square; ++i) {
              std::uint64_t v = eval(red[i], r);
              square = v != 0 && legendre(v, p_) == 1;
            }
            if (square) return accept_center(base + pk * static_cast<unsigned long>(r));
          }
          fail(ErrorCode::CapExceeded, "no square residue found among the first residues mod " + std::to_string(p_));
        }
      }
    }

    for (std::uint64_t r : open) {
      const Int center = base + pk * static_cast<unsigned long>(r);
      std::vector<IPoly> child;
      std::vector<int> child_parity;
      std::vector<Classified> cls;
      const Int p = static_cast<unsigned long>(p_);
      for (std::size_t i = 0; i < n; ++i) {
        int e = 0;
        child.push_back(strip(g[i].compose_affine(Int(static_cast<unsigned long>(r)), p), p_, e));
        child_parity.push_back((parity[i] + e) % 2);
        cls.push_back(classify(child.back(), child_parity.back(), p_));
      }
      int refuted = -1, open_count = 0, hensel = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (cls[i].kind == DiscClass::Constant && cls[i].constant_class == SquareVerdict::NonSquare && refuted < 0)
          refuted = static_cast<int>(i);
        if (cls[i].kind != DiscClass::Constant) ++open_count;
        if (cls[i].kind == DiscClass::Hensel) hensel = static_cast<int>(i);
      }
      if (refuted >= 0) {
        refute(center, k + 1, refuted);
        continue;
      }
      if (open_count == 0) {
        if (accept_center(center)) return true;
        continue;
      }
      if (open_count == 1 && hensel >= 0) {
        accept_hensel(center, k + 1, hensel);
        return true;
      }
      if (depth + 1 > cap_)
        fail(ErrorCode::DepthExceeded, "disc search at p = " + std::to_string(p_) + " passed depth " + std::to_string(cap_));
      if (explore(child, child_parity, center, k + 1, depth + 1)) return true;
    }
    return false;
  }

  const std::vector<IPoly>& polys_;
  std::uint64_t p_;
  int cap_;
  Chart chart_ = Chart::Affine;
  std::vector<IPoly> chart_polys_;
  LocalVerdict out_;
};

}  // namespace

int local_depth_cap(const Int& disc, std::uint64_t p) {
  require(disc != 0, "depth cap of a zero discriminant");
  return valuation(disc, p) + 2 * valuation(Int(4), p) + 3;
}

LocalVerdict system_solvable_Qp(const std::vector<IPoly>& polys, std::uint64_t p, int depth_cap) {
  require(p >= 2 && is_prime(p), "p-adic solvability needs a prime p");
  require(p < (std::uint64_t(1) << 62), "prime too large for word-size residues");
  return DiscSearch(polys, p, depth_cap).run();
}

LocalVerdict solvable_Qp(const HypCurve& curve, std::uint64_t p) {
  return system_solvable_Qp({curve.f}, p, local_depth_cap(curve.disc, p));
}

bool replay_witness(const std::vector<IPoly>& polys, const LocalWitness& w) {
  if (w.place == kRealPlace) {
    for (const IPoly& q : polys)
      if (q(w.coordinate) < 0) return false;
    return true;
  }
  const std::uint64_t p = w.place;
  const auto qs = chart_polys(polys, w.chart);
  if (w.chart == Chart::Inverted && w.coordinate != 0 && valuation(w.coordinate, p) < 1) return false;
  if (w.kind == WitnessKind::SquareValue) {
    for (const IPoly& q : qs)
      if (square_verdict(q(w.coordinate), p) == SquareVerdict::NonSquare) return false;
    return true;
  }
  if (w.kind != WitnessKind::HenselRoot || w.coordinate.get_den() != 1) return false;
  const Int c = w.coordinate.get_num();
  const Int scale = pow_int(Int(static_cast<unsigned long>(p)), w.level);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    int e = 0;
    IPoly h = strip(qs[i].compose_affine(c, scale), p, e);
    Classified cl = classify(h, e % 2, p);
    if (static_cast<int>(i) == w.poly) {
      if (cl.kind != DiscClass::Hensel) return false;
    } else if (cl.kind != DiscClass::Constant || cl.constant_class != SquareVerdict::Square) {
      return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> local_test_primes(const HypCurve& curve) {
  std::vector<std::uint64_t> ps;
  for (const Int& q : curve.bad_primes) {
    if (!q.fits_ulong_p() || q.get_ui() >= (1ul << 62)) fail(ErrorCode::BadPrime, "bad prime " + to_string(q) + " too large");
    ps.push_back(q.get_ui());
  }
  const std::uint64_t weil = 4ull * static_cast<std::uint64_t>(curve.genus) * static_cast<std::uint64_t>(curve.genus);
  for (std::uint64_t p : primes_up_to(weil - 1)) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

ElsReport everywhere_locally(const HypCurve& curve) {
  ElsReport rep;
  LocalVerdict real = solvable_R(curve);
  rep.places.push_back(real);
  if (!real.solvable) {
    rep.solvable = false;
    rep.failed_place = kRealPlace;
    return rep;
  }
  for (std::uint64_t p : local_test_primes(curve)) {
    LocalVerdict v = solvable_Qp(curve, p);
    rep.places.push_back(v);
    if (!v.solvable) {
      rep.solvable = false;
      rep.failed_place = p;
      return rep;
    }
  }
  return rep;
}

}  // namespace hyperpts
