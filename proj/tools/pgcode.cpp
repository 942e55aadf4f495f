/// Command-line front door: construct spaces and codes, verify blocking-set
/// facts, and emit JSON reports. Exit codes: 0 success, 2 precondition
/// violation, 3 theorem-falsifying observation, 64 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "pgcode/pgcode.hpp"

namespace {

using pgcode::json;

struct Options {
  std::uint32_t p = 2;
  std::uint32_t h = 1;
  unsigned n = 2;
  unsigned k = 1;
  bool dual = false;
  bool min_weight = false;
  bool weight_dist = false;
  std::string budget = "2^26";
  unsigned threads = 0;
  std::string out;
  std::uint64_t seed = 0;
  std::string input;
  std::string csv;
  std::string packed;
  std::string type = "trace-difference";
  bool project = false;
  bool companion = false;
  unsigned udim = 0;
  std::size_t uindex = 0;
  std::string slope;
};

std::uint64_t parse_budget(const std::string& s) {
  const auto caret = s.find('^');
  std::uint64_t value = 0;
  if (caret == std::string::npos) {
    value = std::stoull(s);
  } else {
    const std::uint64_t base = std::stoull(s.substr(0, caret));
    std::uint64_t exp = std::stoull(s.substr(caret + 1));
    value = 1;
    while (exp-- > 0) {
      if (base != 0 && value > (std::uint64_t{1} << 62) / base)
        throw std::out_of_range("budget too large");
      value *= base;
    }
  }
  if (value == 0) throw std::invalid_argument("budget must be positive");
  return value;
}

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("PGCODE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return pgcode::default_thread_count();
}

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pgcode::precondition_error("cannot open input file: " + path);
  json j;
  in >> j;
  return j;
}

json base_config(const std::string& sub, const Options& o, std::uint64_t budget,
                 unsigned threads) {
  json c;
  c["subcommand"] = sub;
  c["p"] = o.p;
  c["h"] = o.h;
  c["n"] = o.n;
  c["k"] = o.k;
  c["budget"] = budget;
  c["threads"] = threads;
  c["seed"] = o.seed;
  if (!o.input.empty()) c["input"] = o.input;
  if (!o.out.empty()) c["out"] = o.out;
  return c;
}

void emit(const std::string& schema, json config, json results, const std::string& out_path) {
  json env = pgcode::report_envelope(schema, std::move(config), std::move(results));
  const std::string text = env.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    pgcode::write_file(out_path, text);
}

int run_space(const Options& o) {
  auto sp = pgcode::Space::make(static_cast<int>(o.n), o.p, o.h);
  json results;
  results["n"] = o.n;
  results["field"] = pgcode::field_to_json(sp->field());
  results["num_points"] = sp->num_points();
  json counts = json::object();
  for (unsigned d = 0; d <= o.n; ++d)
    counts[std::to_string(d)] =
        pgcode::int_to_json(pgcode::gaussian_coefficient(o.n + 1, d + 1, sp->q()));
  results["subspace_counts"] = counts;
  json pts = json::array();
  for (std::size_t i = 0; i < sp->num_points(); ++i) pts.push_back(sp->point(i));
  results["points"] = pts;
  if (!o.csv.empty() || !o.packed.empty()) {
    auto inc = sp->incidence_matrix(static_cast<int>(o.k));
    results["incidence"] = {{"k", o.k}, {"rows", inc.rows}, {"cols", inc.cols}};
    if (!o.csv.empty()) {
      std::ostringstream os;
      pgcode::incidence_to_csv(inc, os);
      pgcode::write_file(o.csv, os.str());
      results["incidence"]["csv"] = o.csv;
    }
    if (!o.packed.empty()) {
      auto bytes = pgcode::incidence_to_packed(inc);
      pgcode::write_file(o.packed, std::string(bytes.begin(), bytes.end()));
      results["incidence"]["packed"] = o.packed;
    }
  }
  emit("pgcode.space.v1", base_config("space", o, 0, 1), results, o.out);
  return 0;
}

int run_code(const Options& o, bool force_dual) {
  const std::uint64_t budget = parse_budget(o.budget);
  const unsigned threads = resolve_threads(o.threads);
  auto sp = pgcode::Space::make(static_cast<int>(o.n), o.p, o.h);
  pgcode::LinearCode code = pgcode::LinearCode::from_incidence(*sp, static_cast<int>(o.k));
  const bool take_dual = force_dual || o.dual;
  if (take_dual) code = code.dual();
  json results;
  results["code"] = {{"length", code.length()},
                     {"dimension", code.dim()},
                     {"k", o.k},
                     {"dual", take_dual}};
  if (o.min_weight || o.weight_dist) {
    auto we = code.enumerate_weights(budget, threads, o.seed);
    json wj = pgcode::weight_enumeration_to_json(we, 100);
    if (!o.weight_dist) wj.erase("distribution");
    results["weights"] = wj;
  }
  json cfg = base_config(take_dual ? "dual" : "code", o, budget, threads);
  cfg["dual"] = take_dual;
  emit("pgcode.code.v1", cfg, results, o.out);
  return 0;
}

int run_blocking(const Options& o) {
  if (o.input.empty()) throw pgcode::precondition_error("blocking requires --input");
  pgcode::PointSet S = pgcode::point_set_from_json(load_json(o.input));
  const int k = static_cast<int>(o.k);
  json results;
  results["size"] = S.indices.size();
  results["k"] = o.k;
  const bool blocks = pgcode::is_k_blocking_set(S, k);
  results["blocking"] = blocks;
  if (blocks) {
    auto ess = pgcode::essential_points(S, k);
    results["essential"] = ess;
    json ne = json::array();
    for (std::size_t i : S.indices)
      if (!std::binary_search(ess.begin(), ess.end(), i)) ne.push_back(i);
    results["nonessential"] = ne;
    pgcode::ReduceResult rr = pgcode::minimal_reduce(S, k);
    results["reduced"] = {{"points", rr.reduced.indices},
                          {"size", rr.reduced.indices.size()},
                          {"unique_regime", rr.unique_regime}};
    results["intersection_exponent"] = pgcode::intersection_exponent(S, k);
    results["tau"] = pgcode::tau_histogram_to_json(pgcode::tau_histogram(S, k, o.p));
    results["bose_burton"] = pgcode::to_string(pgcode::verify_bose_burton(S, k));
  }
  json cfg = base_config("blocking", o, 0, 1);
  emit("pgcode.blocking.v1", cfg, results, o.out);
  return 0;
}

int run_spread(const Options& o) {
  pgcode::Spread D = pgcode::field_reduce(static_cast<int>(o.n), o.p, o.h);
  const unsigned udim = o.udim == 0 ? o.h : o.udim;
  const auto& subs = D.big->subspaces(static_cast<int>(udim));
  if (o.uindex >= subs.size())
    throw pgcode::precondition_error("--uindex out of range: " + std::to_string(subs.size()) +
                                     " subspaces of that dimension");
  pgcode::LinearBlockingSetWitness w = pgcode::linear_blocking_set(D, subs[o.uindex]);
  json results;
  results["elements"] = D.elements.size();
  results["u"] = {{"dim", udim}, {"index", o.uindex}};
  results["witness"] = pgcode::spread_witness_to_json(D, w);
  const bool trivial = pgcode::is_trivial_witness(D, w);
  results["trivial"] = trivial;
  if (o.companion) {
    if (trivial) throw pgcode::precondition_error("companion needs a non-trivial witness");
    pgcode::LinearBlockingSetWitness c = pgcode::companion_blocking_set(D, w);
    auto mask = pgcode::detail::membership_mask(w.B);
    std::size_t common = 0;
    for (std::size_t i : c.B.indices) common += mask[i];
    results["companion"] = pgcode::spread_witness_to_json(D, c);
    results["companion"]["common_points"] = common;
  }
  json cfg = base_config("spread", o, 0, 1);
  cfg["udim"] = udim;
  cfg["uindex"] = o.uindex;
  emit("pgcode.spread.v1", cfg, results, o.out);
  return 0;
}

int run_redei(const Options& o) {
  if (o.input.empty()) throw pgcode::precondition_error("redei requires --input");
  pgcode::PointSet K = pgcode::point_set_from_json(load_json(o.input));
  pgcode::AffineFrame fr = pgcode::build_frame(K);
  pgcode::RedeiPolynomial rp = pgcode::redei_f(fr);
  json results;
  results["k"] = rp.k;
  results["hyperplane"] = pgcode::subspace_to_json(fr.hyperplane);
  results["distinguished_point"] = fr.distinguished;
  results["f"] = pgcode::redei_polynomial_to_json(rp);
  json ne = json::array();
  for (const auto& pt : pgcode::nonessential_points(rp))
    ne.push_back({{"affine", pt.affine}, {"point", pt.point_index}});
  results["nonessential"] = ne;
  if (!o.slope.empty()) {
    pgcode::Row slope;
    std::stringstream ss(o.slope);
    std::string tok;
    while (std::getline(ss, tok, ',')) slope.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    results["slope"] = pgcode::slope_facts_to_json(pgcode::slope_evaluate(rp, slope));
  }
  json cfg = base_config("redei", o, 0, 1);
  if (!o.slope.empty()) cfg["slope"] = o.slope;
  emit("pgcode.redei.v1", cfg, results, o.out);
  return 0;
}

int run_construct(const Options& o) {
  auto sp = pgcode::Space::make(static_cast<int>(o.n), o.p, o.h);
  pgcode::DualWitness w;
  json results;
  if (o.type == "difference") {
    const auto& subs = sp->subspaces(static_cast<int>(o.n - o.k));
    bool made = false;
    for (std::size_t j = 1; j < subs.size() && !made; ++j) {
      if (sp->meets(subs[0], subs[j])) {
        w = pgcode::difference_codeword(sp, subs[0], subs[j], o.k);
        made = true;
      }
    }
    if (!made) throw pgcode::precondition_error("no intersecting subspace pair found");
  } else if (o.type == "trace-difference") {
    const unsigned m = o.n - o.k;
    pgcode::TraceBlockingSet tb = pgcode::trace_blocking_set(o.p, o.h, m, o.n, o.k);
    results["trace"] = {{"size", tb.B.indices.size()},
                        {"x", tb.x},
                        {"blocking", tb.blocking},
                        {"minimal", tb.minimal}};
    w = pgcode::blocking_difference_codeword(tb.B, tb.pi, o.k);
  } else {
    throw pgcode::precondition_error("unknown --type: " + o.type);
  }
  results["witness"] = pgcode::dual_witness_to_json(w);
  if (o.project) {
    auto data = pgcode::find_projection_data(w);
    if (!data) throw pgcode::precondition_error("no admissible projection centre found");
    pgcode::DualWitness pr = pgcode::project_codeword(w, data->first, data->second);
    results["projected"] = pgcode::dual_witness_to_json(pr);
  }
  json cfg = base_config("construct", o, 0, 1);
  cfg["type"] = o.type;
  emit("pgcode.construct.v1", cfg, results, o.out);
  return 0;
}

int run_table1(const Options& o) {
  const std::uint64_t budget = parse_budget(o.budget);
  const unsigned threads = resolve_threads(o.threads);
  pgcode::BoundReport r = pgcode::table1_row(o.p, o.h, o.n, o.k, budget, threads);
  std::fprintf(stderr, "table1 p=%u h=%u n=%u k=%u  lower=%s upper=%s exact=%s verdict=%s\n", o.p,
               o.h, o.n, o.k, r.lower.str().c_str(), r.upper.str().c_str(),
               r.exact ? std::to_string(*r.exact).c_str() : "-", r.verdict.c_str());
  emit("pgcode.table1.v1", base_config("table1", o, budget, threads),
       pgcode::bound_report_to_json(r), o.out);
  return r.verdict == "falsifying" ? 3 : 0;
}

int run_gap(const Options& o) {
  const std::uint64_t budget = parse_budget(o.budget);
  const unsigned threads = resolve_threads(o.threads);
  pgcode::GapReport g =
      pgcode::gap_verdict(static_cast<int>(o.n), o.p, o.h, static_cast<int>(o.k), budget, threads);
  emit("pgcode.gap.v1", base_config("gap", o, budget, threads), pgcode::gap_report_to_json(g),
       o.out);
  return g.verdict == "falsifying" ? 3 : 0;
}

int run_verify_all(const Options& o) {
  const std::uint64_t budget = parse_budget(o.budget);
  const unsigned threads = resolve_threads(o.threads);
  auto results = pgcode::run_acceptance(budget, threads);
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    std::fprintf(stderr, "criterion %2d %s  %s (%.2fs)%s%s\n", r.id, r.pass ? "PASS" : "FAIL",
                 r.name.c_str(), r.seconds, r.detail.empty() ? "" : "  ", r.detail.c_str());
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"detail", r.detail},
                   {"seconds", r.seconds}});
    all = all && r.pass;
  }
  json cfg = base_config("verify-all", o, budget, threads);
  emit("pgcode.verify.v1", cfg, {{"criteria", arr}, {"all_pass", all}}, o.out);
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pgcode: p-ary linear codes from projective incidence matrices"};
  app.set_help_flag("--help", "print help and exit");  // frees -h/--h for the field degree
  app.require_subcommand(1);
  Options o;

  auto add_params = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help and exit");
    sub->add_option("--p", o.p, "field characteristic (prime)");
    sub->add_option("--h", o.h, "field extension degree");
    sub->add_option("--n", o.n, "projective dimension");
    sub->add_option("--k", o.k, "subspace dimension");
    sub->add_option("--out", o.out, "write the JSON report here instead of standard output");
  };
  auto add_work = [&](CLI::App* sub) {
    sub->add_option("--budget", o.budget, "word budget, e.g. 2^26 or 1000000");
    sub->add_option("--threads", o.threads, "worker count (0 = PGCODE_THREADS or hardware)");
    sub->add_option("--seed", o.seed, "seed for sampled enumeration; recorded in every report");
  };

  CLI::App* space = app.add_subcommand("space", "enumerate a projective space and export incidence");
  add_params(space);
  space->add_option("--csv", o.csv, "write the point-vs-k-space incidence matrix as CSV");
  space->add_option("--packed", o.packed, "write the incidence matrix as a packed bit matrix");

  CLI::App* code = app.add_subcommand("code", "build the k-space incidence code");
  add_params(code);
  add_work(code);
  code->add_flag("--dual", o.dual, "work with the dual code");
  code->add_flag("--min-weight", o.min_weight, "report the minimum weight");
  code->add_flag("--weight-dist", o.weight_dist, "report the full weight distribution");

  CLI::App* dual = app.add_subcommand("dual", "build the dual of the incidence code");
  add_params(dual);
  add_work(dual);
  dual->add_flag("--min-weight", o.min_weight, "report the minimum weight");
  dual->add_flag("--weight-dist", o.weight_dist, "report the full weight distribution");

  CLI::App* blocking = app.add_subcommand("blocking", "analyse a point set as a k-blocking set");
  add_params(blocking);
  blocking->add_option("--input", o.input, "point-set JSON file")->required();

  CLI::App* spread = app.add_subcommand("spread", "field reduction and linear blocking sets");
  add_params(spread);
  spread->add_option("--udim", o.udim, "projective dimension of U in the big space (default h)");
  spread->add_option("--uindex", o.uindex, "index of U in canonical order");
  spread->add_flag("--companion", o.companion, "also build a companion blocking set");

  CLI::App* redei = app.add_subcommand("redei", "affine frame, polynomial, and slope analysis");
  add_params(redei);
  redei->add_option("--input", o.input, "point-set JSON file")->required();
  redei->add_option("--slope", o.slope, "comma-separated slope codes to evaluate");

  CLI::App* construct = app.add_subcommand("construct", "build a certified dual codeword");
  add_params(construct);
  construct->add_option("--type", o.type, "difference | trace-difference");
  construct->add_flag("--project", o.project, "also project the witness one dimension down");

  CLI::App* table1 = app.add_subcommand("table1", "bound row for the dual minimum weight");
  add_params(table1);
  add_work(table1);

  CLI::App* gap = app.add_subcommand("gap", "scan the weight gap above the minimum");
  add_params(gap);
  add_work(gap);

  CLI::App* verify = app.add_subcommand("verify-all", "run the full acceptance suite");
  verify->set_help_flag("--help", "print help and exit");
  verify->add_option("--out", o.out, "write the JSON report here instead of standard output");
  add_work(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (space->parsed()) return run_space(o);
    if (code->parsed()) return run_code(o, false);
    if (dual->parsed()) return run_code(o, true);
    if (blocking->parsed()) return run_blocking(o);
    if (spread->parsed()) return run_spread(o);
    if (redei->parsed()) return run_redei(o);
    if (construct->parsed()) return run_construct(o);
    if (table1->parsed()) return run_table1(o);
    if (gap->parsed()) return run_gap(o);
    if (verify->parsed()) return run_verify_all(o);
  } catch (const pgcode::precondition_error& e) {
    std::fprintf(stderr, "precondition violated: %s\n", e.what());
    return 2;
  } catch (const pgcode::falsified_error& e) {
    std::fprintf(stderr, "theorem-falsifying observation: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "bad argument: %s\n", e.what());
    return 64;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "bad argument: %s\n", e.what());
    return 64;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
