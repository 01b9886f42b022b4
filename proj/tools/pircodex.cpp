// Copyright 2026 The pircodex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pircodex command-line driver.
//
// Exit status: 0 success, 1 verified negative, 2 usage error, 3 budget
// exhausted (indeterminate).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pircodex/pircodex.hpp"

namespace {

using pircodex::Rational;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIndeterminate = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string format = "text";
  std::optional<uint64_t> seed;
  std::size_t jobs = 0;
};

struct CodeOptions {
  std::string code_file;
  std::string construct;
  std::string field = "gf(2)";
  std::size_t n = 0;
  std::size_t k = 0;
  std::string poly;
  unsigned r = 0;
  unsigned e = 0;
};

struct LambdaOptions {
  std::string lambda_file;
  std::string from = "auto";
  std::size_t kappa = 0;
  std::size_t nu = 0;
  uint64_t budget = pircodex::SearchOptions{}.node_budget;
};

uint64_t resolve_seed(const GlobalOptions& g) {
  if (g.seed) return *g.seed;
  if (const char* env = std::getenv("PIRCODEX_SEED")) {
    try {
      return pircodex::detail::parse_unsigned(env);
    } catch (const pircodex::ParseError&) {
      throw UsageError("PIRCODEX_SEED must be an unsigned integer");
    }
  }
  return 0;
}

std::vector<uint64_t> parse_list(const std::string& text) {
  std::vector<uint64_t> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream words(token);
    std::string w;
    while (words >> w) out.push_back(pircodex::detail::parse_unsigned(w));
  }
  return out;
}

void add_code_options(CLI::App* cmd, CodeOptions& o) {
  cmd->add_option("--code", o.code_file, "Generator matrix file");
  cmd->add_option("--construct", o.construct, "Built-in family")
      ->check(CLI::IsMember({"cyclic", "rm", "mds", "repetition"}));
  cmd->add_option("--field", o.field, "Field spec, e.g. gf(5) or gf(2^3)");
  cmd->add_option("--n", o.n, "Code length");
  cmd->add_option("--k", o.k, "Code dimension (mds)");
  cmd->add_option("--poly", o.poly, "Cyclic generator coefficients, ascending degree");
  cmd->add_option("--r", o.r, "Reed-Muller order");
  cmd->add_option("--e", o.e, "Reed-Muller number of variables");
}

void add_lambda_options(CLI::App* cmd, LambdaOptions& o) {
  cmd->add_option("--lambda", o.lambda_file, "Rate matrix file");
  cmd->add_option("--lambda-from", o.from, "Rate matrix source when no file is given")
      ->check(CLI::IsMember({"auto", "cyclic", "rm", "shifted", "search"}));
  cmd->add_option("--kappa", o.kappa, "Column weight for --lambda-from search");
  cmd->add_option("--nu", o.nu, "Row count for --lambda-from search");
  cmd->add_option("--budget", o.budget, "Search node budget");
}

pircodex::LinearCode load_code(const CodeOptions& o) {
  using namespace pircodex;
  if (!o.code_file.empty() && !o.construct.empty()) {
    throw UsageError("give either --code or --construct, not both");
  }
  if (!o.code_file.empty()) return parse_code(read_text_file(o.code_file));
  if (o.construct.empty()) throw UsageError("a code is required: --code FILE or --construct");
  const Field field = Field::parse(o.field);
  if (o.construct == "rm") {
    if (o.e == 0) throw UsageError("--construct rm needs --e");
    return code_reed_muller(o.r, o.e);
  }
  if (o.n == 0) throw UsageError("--construct " + o.construct + " needs --n");
  if (o.construct == "repetition") return code_repetition(field, o.n);
  if (o.construct == "mds") {
    if (o.k == 0) throw UsageError("--construct mds needs --k");
    return code_mds(field, o.n, o.k);
  }
  if (o.poly.empty()) throw UsageError("--construct cyclic needs --poly");
  return code_cyclic(field, o.n, parse_list(o.poly));
}

struct ResolvedLambda {
  pircodex::RateMatrix lambda;
  std::string source;
};

ResolvedLambda load_lambda(const pircodex::LinearCode& code, const LambdaOptions& o) {
  using namespace pircodex;
  if (!o.lambda_file.empty()) {
    return {parse_rate_matrix(read_text_file(o.lambda_file)), "file:" + o.lambda_file};
  }
  auto by_family = [&](AutomorphismKind kind) -> std::optional<RateMatrix> {
    try {
      const auto perms = automorphism_family(code, kind);
      const auto info = information_sets(code).front();
      return lambda_from_automorphisms(code, perms, info);
    } catch (const UnsupportedError&) {
      return std::nullopt;
    }
  };
  if (o.from == "cyclic" || o.from == "rm") {
    auto kind = o.from == "cyclic" ? AutomorphismKind::cyclic_shifts
                                   : AutomorphismKind::rm_translations;
    if (auto lambda = by_family(kind)) return {*lambda, std::string("automorphisms:") + o.from};
    throw UsageError(std::string("code does not admit ") + to_string(kind));
  }
  if (o.from == "shifted") {
    for (const auto& info : information_sets(code)) {
      try {
        return {lambda_from_shifted_information_set(code, info), "shifted:" + info.to_string()};
      } catch (const PreconditionError&) {
      }
    }
    throw UsageError("no information set stays one under all rotations");
  }
  if (o.from == "search") {
    if (o.kappa == 0 || o.nu == 0) throw UsageError("--lambda-from search needs --kappa and --nu");
    SearchResult r = search_rate_matrix(code, o.kappa, o.nu, SearchOptions{o.budget});
    if (r.status == SearchStatus::found) return {*r.matrix, "search"};
    if (r.status == SearchStatus::indeterminate) {
      throw TooLargeError("search budget exhausted before a rate matrix was found");
    }
    throw UsageError("no rate matrix with these parameters exists for the code");
  }
  ClassifyOptions co;
  co.search_budget = o.budget;
  Classification c = classify(code, co);
  if (c.lambda) return {*c.lambda, c.method};
  throw UsageError("no capacity-achieving rate matrix available (" +
                   std::string(to_string(c.verdict)) + "); pass --lambda");
}

Json rational_json(const Rational& r) { return pircodex::to_fraction(r); }

Json lambda_json(const pircodex::RateMatrix& lambda) {
  Json rows = Json::array();
  for (const auto& row : lambda.rows()) {
    std::string s;
    for (uint8_t v : row) s += v ? '1' : '0';
    rows.push_back(s);
  }
  return Json{{"kappa", lambda.kappa()}, {"nu", lambda.nu()}, {"rows", rows}};
}

Json code_json(const pircodex::LinearCode& code) {
  return Json{{"field", code.field().to_string()},
              {"n", code.n()},
              {"k", code.k()},
              {"family", pircodex::to_string(code.family())},
              {"generator", pircodex::generator_string(code.generator())}};
}

// Text rendering of a JSON document: "key: value" with nested indentation.
void render_text(std::ostream& os, const Json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      os << pad << key << ":\n";
      render_text(os, value, indent + 2);
    } else if (value.is_array()) {
      bool flat = std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_primitive(); });
      if (flat) {
        os << pad << key << ":";
        for (const auto& v : value) os << ' ' << scalar(v);
        os << "\n";
      } else {
        os << pad << key << ":\n";
        std::size_t t = 0;
        for (const auto& v : value) {
          os << pad << "  [" << ++t << "]\n";
          if (v.is_object()) {
            render_text(os, v, indent + 4);
          } else {
            os << pad << "    " << v.dump() << "\n";
          }
        }
      }
    } else {
      os << pad << key << ": " << scalar(value) << "\n";
    }
  }
}

void flatten_csv(std::ostream& os, const Json& j, const std::string& prefix) {
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (value.is_structured()) {
      flatten_csv(os, value, path);
    } else {
      os << path << "," << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

// Emits `doc` in the chosen format; `table` (array of flat objects) is used
// for csv when given.
void emit(const GlobalOptions& g, const Json& doc, const Json* table = nullptr) {
  if (g.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else if (g.format == "csv") {
    if (table && !table->empty()) {
      bool first = true;
      for (const auto& row : *table) {
        if (first) {
          bool c = false;
          for (const auto& [key, _] : row.items()) std::cout << (c ? "," : "") << key, c = true;
          std::cout << "\n";
          first = false;
        }
        bool c = false;
        for (const auto& [_, v] : row.items()) {
          std::cout << (c ? "," : "") << (v.is_string() ? v.get<std::string>() : v.dump());
          c = true;
        }
        std::cout << "\n";
      }
    } else {
      std::cout << "key,value\n";
      flatten_csv(std::cout, doc, "");
    }
  } else {
    render_text(std::cout, doc);
  }
}

// ---------------------------------------------------------------------------

int cmd_capacity(const GlobalOptions& g, std::size_t n, std::size_t k, std::size_t f) {
  const Rational c = pircodex::mds_pir_capacity(n, k, f);
  if (g.format == "text") {
    std::cout << pircodex::describe(c) << "\n";
    return kExitOk;
  }
  Json doc{{"n", n}, {"k", k}, {"f", f}, {"capacity", rational_json(c)},
           {"decimal", pircodex::to_double(c)},
           {"limit", rational_json(pircodex::capacity_limit(n, k))}};
  emit(g, doc);
  return kExitOk;
}

int cmd_rate(const GlobalOptions& g, const CodeOptions& co, const LambdaOptions& lo,
             std::size_t files) {
  using namespace pircodex;
  const LinearCode code = load_code(co);
  const ResolvedLambda rl = load_lambda(code, lo);
  const auto validation = validate_rate_matrix(rl.lambda, code);
  if (!validation.valid) {
    Json doc{{"code", code_json(code)}, {"lambda", lambda_json(rl.lambda)},
             {"valid", false}, {"failing_row", validation.failing_row.value_or(0)},
             {"reason", validation.reason}};
    emit(g, doc);
    return kExitNegative;
  }
  const Rational rate = achievable_rate(rl.lambda, code, files);
  const Rational capacity = mds_pir_capacity(code.n(), code.k(), files);
  const auto ratio = ratio_bound_check(rl.lambda, code);
  Json doc{{"code", code_json(code)},
           {"lambda", lambda_json(rl.lambda)},
           {"lambda_source", rl.source},
           {"files", files},
           {"rate", rational_json(rate)},
           {"rate_decimal", to_double(rate)},
           {"capacity", rational_json(capacity)},
           {"capacity_decimal", to_double(capacity)},
           {"meets_capacity", rate == capacity},
           {"ratio_bound_holds", ratio.bound_holds}};
  emit(g, doc);
  return kExitOk;
}

int cmd_ghw(const GlobalOptions& g, const CodeOptions& co, std::size_t s, uint64_t budget) {
  using namespace pircodex;
  const LinearCode code = load_code(co);
  Json doc{{"code", code_json(code)}};
  if (s != 0) {
    doc["s"] = s;
    doc["weight"] = generalized_hamming_weight(code, s, budget);
  } else {
    doc["weights"] = weight_hierarchy(code, budget);
  }
  emit(g, doc);
  return kExitOk;
}

int cmd_search(const GlobalOptions& g, const CodeOptions& co, std::size_t kappa, std::size_t nu,
               uint64_t budget) {
  using namespace pircodex;
  const LinearCode code = load_code(co);
  if (kappa == 0 || nu == 0) {
    const std::size_t d = std::gcd(code.n(), code.k());
    if (kappa == 0) kappa = code.k() / d;
    if (nu == 0) nu = code.n() / d;
  }
  const SearchResult r = search_rate_matrix(code, kappa, nu, SearchOptions{budget});
  Json doc{{"code", code_json(code)}, {"kappa", kappa}, {"nu", nu},
           {"status", to_string(r.status)}, {"nodes", r.nodes}, {"budget", budget}};
  if (r.matrix) doc["lambda"] = lambda_json(*r.matrix);
  emit(g, doc);
  if (r.status == SearchStatus::found) return kExitOk;
  return r.status == SearchStatus::not_found ? kExitNegative : kExitIndeterminate;
}

int cmd_classify(const GlobalOptions& g, const CodeOptions& co, uint64_t budget, bool certify) {
  using namespace pircodex;
  const LinearCode code = load_code(co);
  ClassifyOptions opts;
  opts.search_budget = budget;
  const Classification c = classify(code, opts);
  Json doc{{"code", code_json(code)}, {"verdict", to_string(c.verdict)}, {"method", c.method}};
  if (!c.condition.weights.empty()) doc["weights"] = c.condition.weights;
  if (c.lambda) doc["lambda"] = lambda_json(*c.lambda);
  if (c.verdict == Verdict::ruled_out) {
    doc["failing_s"] = c.failing_s;
    doc["failing_weight"] = c.failing_weight;
  }
  if (!c.note.empty()) doc["note"] = c.note;
  emit(g, doc);
  if (c.verdict == Verdict::indeterminate) return kExitIndeterminate;
  if (c.verdict == Verdict::ruled_out && certify) return kExitNegative;
  return kExitOk;
}

int cmd_scan(const GlobalOptions& g, pircodex::ScanOptions opts, const std::string& field,
             const std::string& spot) {
  using namespace pircodex;
  const Field f = Field::parse(field);
  opts.q = f.order();
  opts.seed = resolve_seed(g);
  if (!spot.empty()) {
    for (uint64_t n : parse_list(spot)) opts.spot_lengths.push_back(n);
  }
  const ScanReport report = scan_codes(opts);
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back(Json{{"n", r.n},
                        {"k", r.k},
                        {"generator", r.generator},
                        {"spot_check", r.spot_check},
                        {"weight_condition", to_string(r.condition)},
                        {"failing_s", r.failing_s},
                        {"search", to_string(r.search)},
                        {"kappa", r.kappa},
                        {"nu", r.nu},
                        {"agreement", to_string(r.agreement)}});
  }
  Json doc{{"seed", opts.seed}, {"field", f.to_string()}, {"n_min", opts.n_min},
           {"n_max", opts.n_max}, {"codes", report.rows.size()},
           {"disagreements", report.disagreements}, {"indeterminate", report.indeterminate}};
  if (g.format == "text") {
    emit(g, doc);
    for (const auto& r : report.rows) {
      if (r.agreement != Agreement::agree) {
        std::cout << "!! " << to_string(r.agreement) << " [" << r.n << "," << r.k << "] "
                  << r.generator << " weights=" << to_string(r.condition)
                  << " search=" << to_string(r.search) << "\n";
      }
    }
  } else {
    doc["rows"] = rows;
    emit(g, doc, &rows);
  }
  if (report.disagreements) return kExitNegative;
  return report.indeterminate ? kExitIndeterminate : kExitOk;
}

int cmd_simulate(const GlobalOptions& g, const CodeOptions& co, const LambdaOptions& lo,
                 std::size_t files, std::size_t request, std::optional<std::size_t> stripes,
                 bool trace) {
  using namespace pircodex;
  const LinearCode code = load_code(co);
  const ResolvedLambda rl = load_lambda(code, lo);
  const ProtocolParams params = ProtocolParams::make(code, rl.lambda, files);
  if (stripes && *stripes != params.beta()) {
    throw UsageError("--stripes " + std::to_string(*stripes) + " does not equal nu^f = " +
                     std::to_string(params.beta()));
  }
  if (request > files) throw UsageError("--request exceeds --files");
  const uint64_t seed = resolve_seed(g);
  std::mt19937_64 content_rng(derive_seed(seed, 0));
  const FileSet set = FileSet::random(code.field(), files, params.beta(), code.k(), content_rng);
  const StorageArray storage = encode_storage(set, code);
  const Rational expected_rate = achievable_rate(rl.lambda, code, files);

  Json sessions = Json::array();
  bool all_ok = true;
  for (std::size_t m = 1; m <= files; ++m) {
    if (request != 0 && m != request) continue;
    const uint64_t session_seed = derive_seed(seed, m, 1);
    const SessionResult r = run_session(storage, params, m, session_seed);
    const bool recovered = r.decoded == set.files[m - 1];
    all_ok = all_ok && recovered && r.rate == expected_rate &&
             r.download == params.expected_download();
    Json digests = Json::array();
    for (uint64_t d : r.trace.response_digest) digests.push_back(hex64(d));
    Json s{{"requested_file", m},
           {"session_seed", session_seed},
           {"recovered", recovered},
           {"download", r.download},
           {"expected_download", params.expected_download()},
           {"rate", rational_json(r.rate)},
           {"rate_decimal", to_double(r.rate)},
           {"queries_per_node", r.trace.queries_per_node},
           {"aligned_sums_decoded", r.trace.aligned_sums_decoded},
           {"aligned_sums_consumed", r.trace.aligned_sums_consumed},
           {"response_digests", digests},
           {"decoded_digest", hex64(r.trace.decoded_digest)}};
    if (trace) {
      Json nodes = Json::array();
      for (const auto& list : r.trace.plan.per_node) {
        Json qs = Json::array();
        for (const auto& pq : list) {
          qs.push_back(Json{{"positions", pq.query.positions},
                            {"kind", to_string(pq.tag.kind)},
                            {"repetition", pq.tag.repetition},
                            {"round", pq.tag.round}});
        }
        nodes.push_back(qs);
      }
      s["queries"] = nodes;
    }
    sessions.push_back(s);
  }
  Json doc{{"seed", seed},
           {"code", code_json(code)},
           {"lambda", lambda_json(rl.lambda)},
           {"lambda_source", rl.source},
           {"files", files},
           {"stripes", params.beta()},
           {"expected_rate", rational_json(expected_rate)},
           {"capacity", rational_json(mds_pir_capacity(code.n(), code.k(), files))},
           {"sessions", sessions}};
  emit(g, doc);
  return all_ok ? kExitOk : kExitNegative;
}

int cmd_audit(const GlobalOptions& g, const CodeOptions& co, const LambdaOptions& lo,
              std::size_t files, std::size_t trials, double alpha, std::size_t unshuffled) {
  using namespace pircodex;
  const LinearCode code = load_code(co);
  const ResolvedLambda rl = load_lambda(code, lo);
  AuditOptions opts;
  opts.trials = trials;
  opts.master_seed = resolve_seed(g);
  opts.alpha = alpha;
  opts.jobs = g.jobs;
  if (unshuffled) opts.unshuffled_request = unshuffled;
  const AuditReport report = privacy_audit(code, rl.lambda, files, opts);

  Json signatures = Json::array();
  for (std::size_t m = 0; m < report.signatures.size(); ++m) {
    Json per_node = Json::array();
    for (const auto& sig : report.signatures[m]) {
      Json subsets = Json::array();
      for (const auto& [subset, count] : sig.subset_counts) {
        subsets.push_back(Json{{"files", subset}, {"count", count}});
      }
      Json mult = Json::object();
      for (const auto& [times, positions] : sig.multiplicity_histogram) {
        mult[std::to_string(times)] = positions;
      }
      per_node.push_back(Json{{"queries", sig.queries},
                              {"file_touches", sig.file_touches},
                              {"subsets", subsets},
                              {"position_multiplicity", mult}});
    }
    signatures.push_back(Json{{"requested_file", m + 1}, {"nodes", per_node}});
  }
  Json tests = Json::array();
  for (const auto& t : report.tests) {
    tests.push_back(Json{{"node", t.node}, {"feature", t.feature}, {"statistic", t.statistic},
                         {"dof", t.dof}, {"p_value", t.p_value}, {"pass", t.pass}});
  }
  Json doc{{"seed", report.master_seed},
           {"code", code_json(code)},
           {"lambda", lambda_json(rl.lambda)},
           {"files", files},
           {"trials", report.trials},
           {"alpha", report.alpha},
           {"per_test_alpha", report.per_test_alpha},
           {"structural_pass", report.structural_pass},
           {"statistical_pass", report.statistical_pass},
           {"pass", report.pass()},
           {"note", "signature equality is exact; the chi-square part is statistical evidence only"}};
  if (report.unshuffled_request) doc["unshuffled_request"] = *report.unshuffled_request;
  doc["chi_square"] = tests;
  if (g.format != "text") doc["signatures"] = signatures;
  emit(g, doc, &tests);
  return report.pass() ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pircodex: private information retrieval over coded storage"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--seed", g.seed, "Seed (default: PIRCODEX_SEED, else 0)");
  app.add_option("--jobs", g.jobs, "Worker threads (0 = all cores)");

  std::size_t cap_n = 0, cap_k = 0, cap_f = 0;
  auto* capacity = app.add_subcommand("capacity", "MDS-PIR capacity for n, k, f");
  capacity->add_option("n", cap_n)->required();
  capacity->add_option("k", cap_k)->required();
  capacity->add_option("f", cap_f)->required();

  CodeOptions code_opts;
  LambdaOptions lambda_opts;
  std::size_t files = 2;

  auto* rate = app.add_subcommand("rate", "Achievable rate of a rate matrix");
  add_code_options(rate, code_opts);
  add_lambda_options(rate, lambda_opts);
  rate->add_option("--files", files, "Number of files f");

  std::size_t ghw_s = 0;
  uint64_t ghw_budget = pircodex::kDefaultEnumerationBudget;
  auto* ghw = app.add_subcommand("ghw", "Generalized Hamming weights");
  add_code_options(ghw, code_opts);
  ghw->add_option("--s", ghw_s, "Single weight d_s (default: whole hierarchy)");
  ghw->add_option("--ghw-budget", ghw_budget, "Enumeration budget");

  std::size_t search_kappa = 0, search_nu = 0;
  uint64_t search_budget = pircodex::SearchOptions{}.node_budget;
  auto* search = app.add_subcommand("search", "Exhaustive rate matrix search");
  add_code_options(search, code_opts);
  search->add_option("--kappa", search_kappa, "Column weight (default k/gcd)");
  search->add_option("--nu", search_nu, "Rows (default n/gcd)");
  search->add_option("--budget", search_budget, "Node budget");

  bool certify = false;
  auto* classify = app.add_subcommand("classify", "Classify a code");
  add_code_options(classify, code_opts);
  classify->add_option("--budget", search_budget, "Search node budget");
  classify->add_flag("--certify", certify, "Exit 1 when the code is ruled out");

  pircodex::ScanOptions scan_opts;
  std::string scan_field = "gf(2)";
  std::string scan_spot;
  auto* scan = app.add_subcommand("scan", "Scan small codes for weight/search agreement");
  scan->add_option("--nmin", scan_opts.n_min, "Smallest length");
  scan->add_option("--nmax", scan_opts.n_max, "Largest length (<= 8)");
  scan->add_option("--field", scan_field, "Field spec");
  scan->add_option("--budget", scan_opts.search_budget, "Search node budget per code");
  scan->add_option("--spot", scan_spot, "Extra lengths sampled at random, e.g. 6,7");
  scan->add_option("--samples", scan_opts.spot_samples, "Samples per spot (n, k)");

  std::size_t request = 0;
  std::optional<std::size_t> stripes;
  bool trace = false;
  auto* simulate = app.add_subcommand("simulate", "Run retrieval sessions end to end");
  add_code_options(simulate, code_opts);
  add_lambda_options(simulate, lambda_opts);
  simulate->add_option("--files", files, "Number of files f");
  simulate->add_option("--request", request, "Requested file (default: every file)");
  simulate->add_option("--stripes", stripes, "Expected stripes per file (must equal nu^f)");
  simulate->add_flag("--trace", trace, "Include every query in the output");

  std::size_t trials = 1000;
  double alpha = 0.01;
  std::size_t unshuffled = 0;
  auto* audit = app.add_subcommand("audit", "Privacy audit");
  add_code_options(audit, code_opts);
  add_lambda_options(audit, lambda_opts);
  audit->add_option("--files", files, "Number of files f");
  audit->add_option("--trials", trials, "Trials per requested file (>= 1000)");
  audit->add_option("--alpha", alpha, "Family-wise significance level");
  audit->add_option("--no-shuffle-for", unshuffled,
                    "Negative control: skip the final shuffle for this requested file");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*capacity) return cmd_capacity(g, cap_n, cap_k, cap_f);
    if (*rate) return cmd_rate(g, code_opts, lambda_opts, files);
    if (*ghw) return cmd_ghw(g, code_opts, ghw_s, ghw_budget);
    if (*search) return cmd_search(g, code_opts, search_kappa, search_nu, search_budget);
    if (*classify) return cmd_classify(g, code_opts, search_budget, certify);
    if (*scan) return cmd_scan(g, scan_opts, scan_field, scan_spot);
    if (*simulate) return cmd_simulate(g, code_opts, lambda_opts, files, request, stripes, trace);
    if (*audit) return cmd_audit(g, code_opts, lambda_opts, files, trials, alpha, unshuffled);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pircodex::TooLargeError& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
    return kExitIndeterminate;
  } catch (const pircodex::DecodeIntegrityError& e) {
    std::cerr << "decode failure: " << e.what() << "\n";
    return kExitNegative;
  } catch (const pircodex::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
