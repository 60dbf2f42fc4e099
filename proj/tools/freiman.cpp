// freiman: command-line front end for the header library.
//
// Exit codes: 0 success, 1 invalid input (parse diagnostics carry a line
// number), 2 usage error, 3 certificate or realization failure.

#include "freiman/freiman.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace freiman;

namespace {

enum Exit { kOk = 0, kInput = 1, kUsage = 2, kCertificate = 3 };

class CertificateFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Human lines go straight out; record lines are buffered and emitted sorted.
class Output {
public:
  explicit Output(bool records) : records_(records) {}

  bool records() const { return records_; }

  void human(const std::string& line) {
    if (!records_)
      std::cout << line << '\n';
  }

  void record(std::initializer_list<std::string> fields) {
    if (!records_)
      return;
    std::string line;
    for (const auto& f : fields) {
      if (!line.empty())
        line += '\t';
      line += f;
    }
    lines_.push_back(std::move(line));
  }

  void flush() {
    std::sort(lines_.begin(), lines_.end());
    for (const auto& l : lines_)
      std::cout << l << '\n';
    lines_.clear();
  }

private:
  bool records_;
  std::vector<std::string> lines_;
};

RationalSet rational_or_fail(const ParsedSet& p, const std::string& path) {
  auto r = as_rational(p.set);
  if (!r)
    throw PreconditionError(path + ": this command needs a rational set");
  return *r;
}

template <typename T>
std::string csv(const FiniteSet<T>& s) {
  std::string out;
  for (const auto& x : s) {
    if (!out.empty())
      out += ",";
    out += to_string(x);
  }
  return out;
}

std::string csv(const std::vector<int>& v) {
  std::string out;
  for (int x : v) {
    if (!out.empty())
      out += ",";
    out += std::to_string(x);
  }
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string tuple_string(const IndexTuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i)
      out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

std::string fixed(long double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << static_cast<double>(v);
  return os.str();
}

// ---- image / mstd -----------------------------------------------------------

void run_image(Output& out, const std::string& form_text, const std::string& path, bool multiplicities) {
  LinearForm form = parse_form(form_text);
  auto parsed = read_set_file(path);
  auto report = form_image(form, parsed.set);
  out.human(to_string(report.image));
  out.human("size=" + std::to_string(report.size()));
  for (std::size_t i = 0; i < report.size(); ++i) {
    if (multiplicities)
      out.human("r(" + to_string(report.image[i]) + ")=" + std::to_string(report.multiplicities[i]));
    out.record({"value", to_string(report.image[i]), std::to_string(report.multiplicities[i])});
  }
  out.record({"size", std::to_string(report.size())});
}

void run_mstd(Output& out, const std::string& path) {
  auto parsed = read_set_file(path);
  auto v = is_mstd(parsed.set);
  out.human("sum=" + std::to_string(v.sum_count) + " diff=" + std::to_string(v.diff_count) +
            " MSTD=" + yes_no(v.is_mstd));
  out.human("A+A = " + to_string(sumset(parsed.set)));
  out.human("A-A = " + to_string(difference_set(parsed.set)));
  out.record({"mstd", std::to_string(v.sum_count), std::to_string(v.diff_count), yes_no(v.is_mstd)});
}

// ---- iso-check / classify8 --------------------------------------------------

void run_iso_check(Output& out, const std::string& form_text, const std::string& path_a,
                   const std::string& path_b, const std::string& map) {
  LinearForm form = parse_form(form_text);
  auto a = read_set_file(path_a).set;
  auto b = read_set_file(path_b).set;
  if (a.size() != b.size())
    throw PreconditionError("sets have different sizes (" + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  auto f = [&] {
    if (map == "order")
      return SetBijection<RealElement>::order_map(a, b);
    std::ifstream in(map);
    if (!in)
      throw ParseError(map, 0, "cannot open file");
    return SetBijection<RealElement>(a, b, parse_pairing(in, a, b, map));
  }();
  auto verdict = is_phi_isomorphism(form, f);
  out.human("form " + to_string(form));
  out.human("homomorphism=" + yes_no(verdict.is_homomorphism) + " isomorphism=" + yes_no(verdict.is_isomorphism));
  out.record({"homomorphism", yes_no(verdict.is_homomorphism)});
  out.record({"isomorphism", yes_no(verdict.is_isomorphism)});
  if (verdict.witness) {
    auto [s, t] = *verdict.witness;
    out.human("witness " + tuple_string(s) + " " + tuple_string(t));
    out.record({"witness", tuple_string(s), tuple_string(t)});
  }
}

void run_classify8(Output& out, const std::string& path) {
  auto parsed = read_set_file(path);
  auto c = classify_mstd8(parsed.set);
  std::string matched = c.reflected ? "14-A*" : "A*";
  out.human("normalized " + to_string(c.normalized));
  out.human("lambda=" + to_string(c.normalized_map.lambda) + " mu=" + to_string(c.normalized_map.mu) +
            " matched=" + matched);
  out.human("A = " + to_string(c.slope) + "*A* + " + to_string(c.intercept));
  out.record({"lambda", to_string(c.normalized_map.lambda)});
  out.record({"mu", to_string(c.normalized_map.mu)});
  out.record({"matched", matched});
  out.record({"slope", to_string(c.slope)});
  out.record({"intercept", to_string(c.intercept)});
}

// ---- realize ----------------------------------------------------------------

void run_realize(Output& out, const std::string& method, const std::string& form_text, const std::string& path) {
  LinearForm form = parse_form(form_text);
  auto parsed = read_set_file(path);
  RealizationResult r = [&] {
    if (method == "group")
      return realize_group(parsed.set, form);
    if (method == "dirichlet")
      return realize_dirichlet(parsed.set, form);
    if (method == "lp")
      return realize_lp(parsed.set, form);
    return realize_auto(parsed.set, form);
  }();

  out.human("B = " + to_string(r.b));
  for (std::size_t i = 0; i < parsed.set.size(); ++i) {
    out.human("  " + to_string(parsed.set[i]) + " -> " + to_string(r.map(i)));
    out.record({"map", to_string(parsed.set[i]), to_string(r.map(i))});
  }
  std::vector<std::pair<std::string, std::string>> params{{"method", to_string(r.method)}};
  if (r.coordinate_scale)
    params.emplace_back("coordinate_scale", to_string(*r.coordinate_scale));
  if (r.embedding)
    params.emplace_back("lambda", to_string(r.embedding->lambda));
  if (r.dirichlet) {
    params.emplace_back("q", std::to_string(r.dirichlet->q));
    params.emplace_back("epsilon", fixed(r.dirichlet->epsilon));
    params.emplace_back("retries", std::to_string(r.dirichlet->retries));
  }
  if (r.lp) {
    params.emplace_back("constraints", std::to_string(r.lp->equalities + r.lp->inequalities));
    params.emplace_back("pivots", std::to_string(r.lp->pivots));
  }
  std::string line;
  for (const auto& [k, v] : params) {
    line += (line.empty() ? "" : " ") + k + "=" + v;
    out.record({"param", k, v});
  }
  out.human(line);
  std::string status = r.certified() ? "OK" : "FAILED";
  out.human("certificate=" + status);
  out.record({"certificate", status});
  if (!r.certified())
    throw CertificateFailure("certificate failed");
}

// ---- search -----------------------------------------------------------------

void print_stats(bool stats, const SearchStats& s) {
  if (stats)
    std::cerr << "examined=" << s.examined << " seconds=" << fixed(s.seconds, 4) << '\n';
}

void run_search_mstd(Output& out, SearchConfig cfg, bool stats) {
  SearchStats s;
  auto found = enumerate_mstd(cfg, &s);
  for (const auto& c : found) {
    auto counts = sum_diff_counts(c.bits);
    std::string sum = std::to_string(counts.sums), diff = std::to_string(counts.diffs);
    out.human(csv(c.elements()) + "  sum=" + sum + " diff=" + diff);
    out.record({csv(c.elements()), sum, diff});
  }
  out.human("found=" + std::to_string(found.size()));
  print_stats(stats, s);
}

void run_search_triple(Output& out, SearchConfig cfg, bool stats) {
  SearchStats s;
  auto found = triple_form_scan(cfg, &s);
  for (const auto& r : found) {
    std::string plus = std::to_string(r.plus_count), minus = std::to_string(r.minus_count);
    out.human(csv(r.set.elements()) + "  plus=" + plus + " minus=" + minus + (r.symmetric ? " symmetric" : ""));
    out.record({csv(r.set.elements()), plus, minus, r.symmetric ? "symmetric" : "-"});
  }
  out.human("found=" + std::to_string(found.size()));
  print_stats(stats, s);
}

// ---- mptq / transport -------------------------------------------------------

void run_mptq(Output& out, const std::string& path) {
  PositiveSet b(rational_or_fail(read_set_file(path), path));
  auto c = product_quotient_counts(b);
  out.human("products=" + std::to_string(c.products) + " quotients=" + std::to_string(c.quotients) +
            " MPTQ=" + yes_no(c.is_mptq));
  out.record({"mptq", std::to_string(c.products), std::to_string(c.quotients), yes_no(c.is_mptq)});
}

void run_transport(Output& out, long long base, const std::string& direction, const std::string& path) {
  RationalSet a = rational_or_fail(read_set_file(path), path);
  RationalSet result = direction == "exp" ? exp_transport(a, BigInt(base)).set()
                                          : log_transport(PositiveSet(a), BigInt(base));
  out.human(to_string(result));
  for (const auto& x : result)
    out.record({to_string(x)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear-form images, Freiman isomorphisms and MSTD sets"};
  app.require_subcommand(1);
  bool records = false;
  app.add_flag("--records", records, "tab-separated records, sorted, one per line");

  std::string form_text = "1,1";
  std::vector<std::string> paths;

  auto* image = app.add_subcommand("image", "image of a set under a linear form");
  bool multiplicities = false;
  image->add_option("--form", form_text, "comma-separated coefficients")->required();
  image->add_flag("--multiplicities", multiplicities, "print r(x) for every image value");
  image->add_option("setfile", paths)->required()->expected(1);

  auto* mstd = app.add_subcommand("mstd", "sumset and difference set counts");
  mstd->add_option("setfile", paths)->required()->expected(1);

  auto* iso = app.add_subcommand("iso-check", "check a bijection for a linear-form isomorphism");
  std::string map = "order";
  iso->add_option("--form", form_text)->required();
  iso->add_option("--map", map, "pairing file, or 'order' for the order-preserving map");
  iso->add_option("sets", paths)->required()->expected(2);

  auto* classify = app.add_subcommand("classify8", "affine class of an 8-element MSTD set");
  classify->add_option("setfile", paths)->required()->expected(1);

  auto* realize = app.add_subcommand("realize", "isomorphic set of positive integers");
  std::string method = "auto";
  realize->add_option("--method", method)->check(CLI::IsMember({"group", "dirichlet", "lp", "auto"}));
  realize->add_option("--form", form_text)->required();
  realize->add_option("setfile", paths)->required()->expected(1);

  auto* search = app.add_subcommand("search", "bounded exhaustive search");
  search->require_subcommand(1);
  SearchConfig cfg;
  cfg.jobs = default_jobs();
  bool stats = false;
  int size = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--max-diameter", cfg.max_diameter)->required()->check(CLI::Range(1, kMaxDiameter - 1));
    sub->add_option("--jobs", cfg.jobs)->check(CLI::Range(1, 1024));
    sub->add_flag("--require-endpoints", cfg.require_endpoints);
    sub->add_flag("--stats", stats, "print sets examined and wall time to stderr");
  };
  auto* search_mstd = search->add_subcommand("mstd", "canonical MSTD sets");
  add_common(search_mstd);
  auto* size_opt = search_mstd->add_option("--size", size)->check(CLI::Range(1, kMaxDiameter + 1));
  auto* search_triple = search->add_subcommand("triple", "sets with |A+A+A| > |A+A-A|");
  add_common(search_triple);
  search_triple->add_flag("--report-equal", cfg.report_equal, "also list symmetric sets");

  auto* mptq = app.add_subcommand("mptq", "product and quotient set counts");
  mptq->add_option("setfile", paths)->required()->expected(1);

  auto* transport = app.add_subcommand("transport", "c^A or log_c B");
  long long base = 2;
  std::string direction;
  transport->add_option("--base", base)->required()->check(CLI::Range(2LL, 1LL << 31));
  transport->add_option("direction", direction)->required()->check(CLI::IsMember({"exp", "log"}));
  transport->add_option("setfile", paths)->required()->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0)
      return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  Output out(records);
  try {
    if (*image)
      run_image(out, form_text, paths[0], multiplicities);
    else if (*mstd)
      run_mstd(out, paths[0]);
    else if (*iso)
      run_iso_check(out, form_text, paths[0], paths[1], map);
    else if (*classify)
      run_classify8(out, paths[0]);
    else if (*realize)
      run_realize(out, method, form_text, paths[0]);
    else if (*search_mstd) {
      if (*size_opt)
        cfg.size = size;
      run_search_mstd(out, cfg, stats);
    } else if (*search_triple)
      run_search_triple(out, cfg, stats);
    else if (*mptq)
      run_mptq(out, paths[0]);
    else if (*transport)
      run_transport(out, base, direction, paths[0]);
    out.flush();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const CertificateFailure& e) {
    out.flush();
    std::cerr << "error: " << e.what() << '\n';
    return kCertificate;
  } catch (const RealizationFailure& e) {
    std::cerr << "error: realization failed: " << e.what() << '\n';
    return kCertificate;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kCertificate;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}
