// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failing criteria.

#include "freiman/freiman.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace freiman;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

RationalSet from_ll(const std::vector<long long>& v) { return RationalSet(std::vector<Rational>(v.begin(), v.end())); }

RationalSet interval_minus(long long lo, long long hi, std::set<long long> holes) {
  std::vector<long long> v;
  for (long long x = lo; x <= hi; ++x)
    if (!holes.count(x))
      v.push_back(x);
  return from_ll(v);
}

BasisPtr basis(std::size_t d) {
  static const BasisPtr b2 = std::make_shared<const Basis>(std::vector<std::string>{"1", "sqrt2"},
                                                           std::vector<double>{1.0, 1.4142135623730951});
  static const BasisPtr b3 = std::make_shared<const Basis>(
      std::vector<std::string>{"1", "sqrt2", "sqrt3"}, std::vector<double>{1.0, 1.4142135623730951, 1.7320508075688772});
  return d == 1 ? Basis::rational() : d == 2 ? b2 : b3;
}

// ---------------------------------------------------------------------------

Outcome worked_example() {
  Outcome o;
  auto t0 = Clock::now();
  const RationalSet a = astar();
  auto sum = form_image(LinearForm{1, 1}, a);
  auto diff = form_image(LinearForm{1, -1}, a);
  auto plus3 = form_image(LinearForm{1, 1, 1}, a);
  auto minus3 = form_image(LinearForm{1, 1, -1}, a);
  o.require(sum.size() == 26, "|A+A| != 26");
  o.require(diff.size() == 25, "|A-A| != 25");
  o.require(sum.image == interval_minus(0, 28, {1, 20, 27}), "A+A differs from [0,28] minus {1,20,27}");
  o.require(diff.image == interval_minus(-14, 14, {-13, -6, 6, 13}), "A-A differs from [-14,14] minus {+-6,+-13}");
  o.require(plus3.size() == 41 && minus3.size() == 41, "|A+A+A| or |A+A-A| != 41");
  o.require(plus3.image == interval_minus(0, 42, {1, 41}), "A+A+A differs from [0,42] minus {1,41}");
  double s = seconds_since(t0);
  o.require(s < 1.0, "took longer than 1 s");
  o.detail = o.pass ? "26/25/41/41 exact in " + std::to_string(s) + " s" : o.detail;
  return o;
}

Outcome bounded_search() {
  Outcome o;
  auto t0 = Clock::now();
  SearchConfig cfg;
  cfg.max_diameter = 14;
  cfg.jobs = default_jobs();
  auto found = enumerate_mstd(cfg);
  int small = 0;
  std::vector<CanonicalSet> eight;
  for (const auto& c : found) {
    if (c.size() <= 7)
      ++small;
    if (c.size() == 8)
      eight.push_back(c);
  }
  double s14 = seconds_since(t0);
  o.require(small == 0, "MSTD set of size <= 7 at diameter 14");
  o.require(eight.size() == 1 && eight[0].to_set() == astar(), "size-8 list at diameter 14 is not exactly [A*]");
  o.require(s14 < 1.0, "diameter 14 took longer than 1 s");

  auto t1 = Clock::now();
  cfg.max_diameter = 24;
  auto wide = enumerate_mstd(cfg);
  for (const auto& c : wide)
    if (c.size() <= 7)
      ++small;
  double s24 = seconds_since(t1);
  o.require(small == 0, "MSTD set of size <= 7 at diameter 24");
  o.require(s24 < 300.0, "diameter 24 took longer than 5 min");
  if (o.pass)
    o.detail = "n=14: only A* at size 8 (" + std::to_string(s14) + " s); n=24: " + std::to_string(wide.size()) +
               " canonical MSTD sets, none below size 8 (" + std::to_string(s24) + " s)";
  return o;
}

// 25 symbolic sets, sizes 2..8, bases of dimension 1..3.
std::vector<RealSet> realization_suite() {
  std::vector<RealSet> out;
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 25; ++i) {
    std::size_t d = 1 + i % 3;
    std::size_t k = 2 + i % 7;
    std::set<std::vector<Rational>> pts;
    std::vector<RealElement> elems;
    while (elems.size() < k) {
      std::vector<Rational> c(d);
      c[0] = Rational(static_cast<long long>(rng() % 9) - 4, 1 + static_cast<long long>(rng() % 2));
      for (std::size_t j = 1; j < d; ++j)
        c[j] = static_cast<long long>(rng() % 3) - 1;
      if (!pts.insert(c).second)
        continue;
      elems.emplace_back(basis(d), c);
    }
    out.emplace_back(std::move(elems));
  }
  return out;
}

struct CertificateRecord {
  LinearForm form;
  SetBijection<RealElement, Rational> map;
};

Outcome realization_round_trip(std::vector<CertificateRecord>& certificates) {
  Outcome o;
  auto t0 = Clock::now();
  const std::vector<LinearForm> forms{LinearForm{1, 1}, LinearForm{1, -1}, LinearForm{2, 3}, LinearForm{1, 1, -1}};
  auto suite = realization_suite();
  int runs = 0;
  for (std::size_t s = 0; s < suite.size() && o.pass; ++s) {
    const auto& a = suite[s];
    std::vector<oracle::Coords> ca;
    for (const auto& x : a)
      ca.push_back(x.coords());
    for (const auto& form : forms) {
      for (auto method : {Method::group, Method::dirichlet, Method::lp}) {
        std::ostringstream where;
        where << "set " << s << " " << to_string(a) << ", form " << to_string(form) << ", " << to_string(method);
        RealizationResult r = [&] {
          switch (method) {
            case Method::group: return realize_group(a, form);
            case Method::dirichlet: return realize_dirichlet(a, form);
            default: return realize_lp(a, form);
          }
        }();
        ++runs;
        o.require(r.certified(), "certificate failed: " + where.str());
        o.require(r.b.size() == a.size() && r.b.min() >= 1 && is_integer_set(r.b),
                  "output is not a positive integer set of the same size: " + where.str());
        std::vector<oracle::Coords> cb;
        for (const auto& y : r.map.mapped_values())
          cb.push_back({y});
        for (const auto& j : all_subsets(form.arity())) {
          auto c = signed_form(form, j).coeffs();
          o.require(oracle::is_isomorphism(c, ca, cb), "not a Phi_J-isomorphism: " + where.str());
          o.require(oracle::image(c, ca).size() == oracle::image(c, cb).size(), "|Phi_J| differs: " + where.str());
        }
        certificates.push_back({form, r.map});
      }
    }
  }
  double s = seconds_since(t0);
  o.require(s < 120.0, "suite took longer than 2 min");
  if (o.pass)
    o.detail = std::to_string(runs) + " realizations certified, all J checked (" + std::to_string(s) + " s)";
  return o;
}

Outcome mstd_transport() {
  Outcome o;
  RealSet a = affine_image(lift(astar(), basis(2)), Rational(1, 2), RealElement(basis(2), {0, 1}));
  auto r = realize_group(a, LinearForm{1, 1});
  auto m = is_mstd(r.b);
  o.require(r.certified(), "certificate failed");
  o.require(m.sum_count == 26 && m.diff_count == 25 && m.is_mstd, "counts differ from (26, 25)");
  std::vector<long long> b;
  for (const auto& x : r.b)
    b.push_back(static_cast<long long>(numerator(x)));
  o.require(oracle::sum_count(b) == 26 && oracle::diff_count(b) == 25, "independent recount differs");
  if (o.pass)
    o.detail = "B = " + to_string(r.b) + " has (26, 25)";
  return o;
}

Outcome affine_classification() {
  Outcome o;
  std::mt19937_64 rng(8);
  int reflected = 0;
  for (int i = 0; i < 50 && o.pass; ++i) {
    Rational lambda(static_cast<long long>(rng() % 41) - 20, 1 + static_cast<long long>(rng() % 9));
    if (lambda == 0)
      lambda = Rational(-3, 7);
    Rational mu(static_cast<long long>(rng() % 201) - 100, 1 + static_cast<long long>(rng() % 13));
    auto a = affine_image(astar(), lambda, mu);
    auto c = classify_mstd8(a);
    bool expect_reflected = lambda < 0;
    reflected += c.reflected;
    o.require(c.reflected == expect_reflected, "wrong orientation for lambda = " + to_string(lambda));
    const auto& nm = c.normalized_map;
    if (expect_reflected)
      o.require(nm.lambda == -1 && nm.mu == 14, "expected (-1, 14)");
    else
      o.require(nm.lambda == 1 && nm.mu == 0, "expected (1, 0)");
    o.require(nm.matches, "reconstruction formula misses a point");
    // formula against the supplied isomorphism, point by point
    const auto f0 = c.isomorphism(0), f2 = c.isomorphism(1);
    for (std::size_t p = 0; p < 8; ++p)
      o.require(astar()[p] * (f2 - f0) / 2 + f0 == c.isomorphism(p), "f(x) = x(f(2)-f(0))/2 + f(0) fails");
    o.require(c.slope == lambda && c.intercept == mu, "recovered map differs from lambda x + mu");
    for (std::size_t p = 0; p < 8; ++p)
      o.require(a.contains(c.slope * astar()[p] + c.intercept), "composed map leaves A");
  }
  if (o.pass)
    o.detail = "50 images classified (" + std::to_string(reflected) + " reflected), all 8 points matched";
  return o;
}

Outcome symmetric_equality() {
  Outcome o;
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200 && o.pass; ++i) {
    int n = 1 + rng() % 20;
    int k = 1 + rng() % (n + 1);
    if (k % 2 == 1 && n % 2 == 1)
      k = k == n + 1 ? k - 1 : k + 1;
    auto a = random_symmetric_set(rng(), n, k);
    std::size_t h = 1 + rng() % 3;
    std::vector<Rational> c;
    for (std::size_t j = 0; j < h; ++j)
      c.emplace_back(static_cast<long long>(rng() % 7) - 3);
    if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; }))
      c[0] = 1 + static_cast<long long>(rng() % 3);
    IndexSubset j;
    for (std::size_t t = 1; t <= h; ++t)
      if (rng() % 2)
        j.insert(t);
    auto check = check_symmetric_equality(a, LinearForm(c), j);
    o.require(check.holds() && check.equal_sets, "symmetric equality fails on " + to_string(a));
    // independent: Φ(A) = s* + Φ_J(A) with s* = Σ_{j∈J} φ_j (min+max)
    std::vector<oracle::Coords> ca;
    for (const auto& x : a)
      ca.push_back({x});
    auto flipped = c;
    Rational shift = 0;
    for (auto t : j) {
      flipped[t - 1] = -flipped[t - 1];
      shift += c[t - 1] * (a.min() + a.max());
    }
    auto lhs = oracle::image(c, ca);
    auto rhs = oracle::image(flipped, ca);
    std::set<Rational> l, r;
    for (const auto& [v, m] : lhs)
      l.insert(v[0]);
    for (const auto& [v, m] : rhs)
      r.insert(v[0] + shift);
    o.require(l == r, "independent recount: Phi(A) != s* + Phi_J(A) on " + to_string(a));
  }
  if (o.pass)
    o.detail = "200 symmetric sets, |Phi(A)| = |Phi_J(A)| and Phi(A) = s* + Phi_J(A)";
  return o;
}

Outcome representation_preservation(const std::vector<CertificateRecord>& certificates) {
  Outcome o;
  std::size_t pairs = 0;
  for (const auto& rec : certificates) {
    if (!o.pass)
      break;
    auto induced = induced_bijection(rec.form, rec.map);
    std::vector<oracle::Coords> ca, cb;
    for (const auto& x : rec.map.domain())
      ca.push_back(x.coords());
    for (const auto& y : rec.map.codomain())
      cb.push_back({y});
    auto ra = oracle::image(rec.form.coeffs(), ca);
    auto rb = oracle::image(rec.form.coeffs(), cb);
    o.require(induced.size() == ra.size() && induced.size() == rb.size(), "F is not onto Phi(A) -> Phi(B)");
    std::set<Rational> seen;
    for (const auto& p : induced.pairs) {
      auto ia = ra.find(p.x.coords());
      auto ib = rb.find({p.y});
      o.require(ia != ra.end() && ib != rb.end(), "F pair outside the images");
      if (ia == ra.end() || ib == rb.end())
        break;
      o.require(ia->second == ib->second, "r(x) != r(F(x)) for x = " + to_string(p.x));
      o.require(seen.insert(p.y).second, "F is not injective");
      ++pairs;
    }
  }
  o.require(!certificates.empty(), "no certificates from the realization suite");
  if (o.pass)
    o.detail = std::to_string(certificates.size()) + " certificates, " + std::to_string(pairs) +
               " pairs (x, F(x)) with equal multiplicities";
  return o;
}

Outcome mptq_mirror() {
  Outcome o;
  auto c = product_quotient_counts(exp_transport(astar(), 2));
  o.require(c.products == 26 && c.quotients == 25 && c.is_mptq, "2^A* counts differ from (26, 25, true)");
  std::mt19937_64 rng(6);
  const long long bases[] = {2, 3, 10};
  for (int i = 0; i < 200 && o.pass; ++i) {
    std::vector<long long> v;
    if (i % 8 == 0) {
      long long lambda = 1 + rng() % 3, mu = rng() % 5;
      for (long long x : {0, 2, 3, 4, 7, 11, 12, 14})
        v.push_back(lambda * x + mu);
      if (rng() % 2)
        v.push_back(100);
    } else {
      v = oracle::random_set(rng, 24, 1 + rng() % 12);
    }
    auto a = from_ll(v);
    long long base = bases[i % 3];
    auto m = is_mstd(a);
    auto b = exp_transport(a, base);
    auto p = product_quotient_counts(b);
    o.require(m.is_mstd == p.is_mptq && m.sum_count == p.products && m.diff_count == p.quotients,
              "transport mismatch on " + to_string(a));
    o.require(log_transport(b, base) == a, "log does not invert exp on " + to_string(a));
  }
  if (o.pass)
    o.detail = "2^A* gives (26, 25, true); 200 transported sets agree";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (Mask m = 1; m < (Mask{1} << 11) && o.pass; ++m) {
    auto v = oracle::mask_elements(m);
    auto a = from_ll(v);
    auto k = sum_diff_counts(m);
    o.require(k.sums == static_cast<int>(form_image(LinearForm{1, 1}, a).size()) &&
                  k.diffs == static_cast<int>(form_image(LinearForm{1, -1}, a).size()),
              "kernel disagrees with form_image on " + to_string(a));
    o.require(k.sums == oracle::sum_count(v) && k.diffs == oracle::diff_count(v),
              "kernel disagrees with the naive pair loop on " + to_string(a));
  }
  auto naive_triple = [](const std::vector<long long>& a, int sign) {
    std::set<long long> s;
    for (auto x : a)
      for (auto y : a)
        for (auto z : a)
          s.insert(x + y + sign * z);
    return static_cast<int>(s.size());
  };
  std::size_t emitted = 0;
  for (int run = 0; run < 16 && o.pass; ++run) {
    const int n = 1 + run % 8;
    const bool report_equal = run >= 8;
    std::set<std::vector<long long>> expected;
    for (Mask m = 1; m < (Mask{1} << (n + 1)); m += 2) {
      auto v = oracle::mask_elements(m);
      auto canon = oracle::mask_elements(canonical_mask(m).bits);
      bool sym = true;
      for (std::size_t i = 0; i < v.size(); ++i)
        sym = sym && v[i] + v[v.size() - 1 - i] == v.front() + v.back();
      if (naive_triple(v, 1) > naive_triple(v, -1) || (report_equal && sym))
        expected.insert(canon);
    }
    SearchConfig cfg;
    cfg.max_diameter = n;
    cfg.report_equal = report_equal;
    std::set<std::vector<long long>> got;
    for (const auto& r : triple_form_scan(cfg)) {
      auto e = oracle::mask_elements(r.set.bits);
      o.require(r.plus_count == naive_triple(e, 1) && r.minus_count == naive_triple(e, -1),
                "triple counts differ at n = " + std::to_string(n));
      got.insert(e);
    }
    o.require(got == expected, "triple scan differs from the naive oracle at n = " + std::to_string(n));
    emitted += got.size();
  }
  if (o.pass)
    o.detail = "2047 masks agree; triple scan matches the oracle for n <= 8, with and without symmetric sets (" +
               std::to_string(emitted) + " sets emitted)";
  return o;
}

}  // namespace

int main() {
  std::vector<CertificateRecord> certificates;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 worked example exactness", worked_example},
      {"2 bounded MSTD size verification", bounded_search},
      {"3 realization round-trip suite", [&] { return realization_round_trip(certificates); }},
      {"4 MSTD transport through realize_group", mstd_transport},
      {"5 affine classification of 8-element MSTD sets", affine_classification},
      {"6 symmetric-form equality", symmetric_equality},
      {"7 representation preservation", [&] { return representation_preservation(certificates); }},
      {"8 MPTQ mirror", mptq_mirror},
      {"9 oracle equivalence of search kernels", oracle_equivalence},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
