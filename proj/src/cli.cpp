#include "sturm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "sturm/counting.hpp"
#include "sturm/error.hpp"
#include "sturm/exactnum.hpp"
#include "sturm/ostrowski.hpp"
#include "sturm/palindromes.hpp"
#include "sturm/words.hpp"

namespace sturm::cli {

namespace {

using json = nlohmann::ordered_json;

// A usage error attributed to one flag.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& flag, const std::string& what)
      : std::runtime_error(flag + ": " + what) {}
};

std::uint64_t parse_positive(std::string_view name, std::string_view text) {
  std::uint64_t value = 0;
  if (text.empty()) throw InvalidArgument("STURM_CAP: empty value for " + std::string(name));
  for (char ch : text) {
    if (ch < '0' || ch > '9' || value > std::numeric_limits<std::uint64_t>::max() / 10) {
      throw InvalidArgument("STURM_CAP: bad value for " + std::string(name));
    }
    value = value * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  if (value == 0) throw InvalidArgument("STURM_CAP: " + std::string(name) + " must be positive");
  return value;
}

enum class Format { text, csv, json };

// Parsed flag values; each command reads the ones it declared.
struct Params {
  std::string d;
  std::string sigma;
  std::string rho = "0";
  std::string alpha;
  std::string flavor = "lower";
  std::string word;
  std::string digits;
  std::string number;
  std::size_t length = 0;
  long index = 0;
  std::uint64_t j = 0;
  std::size_t n = 0;
  long from = -1;
  std::size_t pos = 0;
  std::size_t max_length = 0;
  std::size_t q = 0;
  std::uint64_t max_p2 = 0;
  std::uint64_t n_max = 0;
  std::size_t n_min = 9;
  std::uint64_t bound = 3;
};

struct Context {
  Params p;
  Caps caps;
  std::size_t jobs = 1;
  Alphabet alphabet = Alphabet::binary;
  std::ostream* err = nullptr;
};

struct Report {
  std::string command;
  json params = json::object();
  std::vector<std::string> columns;
  // Leading columns that only label a row; a single-row text report omits them.
  std::size_t keys = 0;
  std::vector<std::vector<json>> rows;
  std::optional<bool> pass;
  std::string summary;
  json extra = json::object();
};

json big(const BigInt& value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) {
    return static_cast<std::uint64_t>(value);
  }
  return value.str();
}

std::string cell_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "-";
  return value.dump();
}

std::string csv_field(const json& value) {
  std::string text = value.is_null() ? std::string() : cell_text(value);
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

void emit(const Report& report, Format format, std::ostream& out, std::ostream& err) {
  switch (format) {
    case Format::text: {
      if (report.rows.size() == 1) {
        const auto& row = report.rows.front();
        for (std::size_t i = report.keys; i < row.size(); ++i) {
          out << (i > report.keys ? " " : "") << cell_text(row[i]);
        }
        out << '\n';
      } else if (report.columns.size() == 1) {
        for (const auto& row : report.rows) out << cell_text(row[0]) << '\n';
      } else {
        out << '#';
        for (const auto& column : report.columns) out << ' ' << column;
        out << '\n';
        for (const auto& row : report.rows) {
          for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << cell_text(row[i]);
          out << '\n';
        }
      }
      if (report.pass) out << (*report.pass ? "PASS" : "FAIL") << ": " << report.summary << '\n';
      break;
    }
    case Format::csv: {
      for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out << (i ? "," : "") << report.columns[i];
      }
      out << '\n';
      for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
      }
      if (report.pass) err << (*report.pass ? "PASS" : "FAIL") << ": " << report.summary << '\n';
      break;
    }
    case Format::json: {
      json doc;
      doc["schema"] = 1;
      doc["command"] = report.command;
      doc["params"] = report.params;
      if (report.pass) {
        doc["pass"] = *report.pass;
        doc["summary"] = report.summary;
      }
      json rows = json::array();
      for (const auto& row : report.rows) {
        json record = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) record[report.columns[i]] = row[i];
        rows.push_back(std::move(record));
      }
      doc["rows"] = std::move(rows);
      for (const auto& [key, value] : report.extra.items()) doc[key] = value;
      out << doc.dump(2) << '\n';
      break;
    }
  }
}

// Parsers that attribute errors to the flag they came from.

DirectiveSequence directive(const std::string& text) {
  try {
    return DirectiveSequence::parse(text);
  } catch (const InvalidArgument& e) {
    throw UsageError("--d", e.what());
  }
}

ExactReal real(const std::string& flag, const std::string& text) {
  try {
    return ExactReal::parse(text);
  } catch (const Error& e) {
    throw UsageError(flag, e.what());
  }
}

BinaryWord word_flag(const std::string& text) {
  try {
    return BinaryWord::parse(text);
  } catch (const InvalidArgument& e) {
    throw UsageError("--word", e.what());
  }
}

OstrowskiRep digits_flag(const std::string& text, const DirectiveSequence& d) {
  try {
    return OstrowskiRep::parse(text, d);
  } catch (const InvalidArgument& e) {
    throw UsageError("--digits", e.what());
  }
}

BigInt big_flag(const std::string& flag, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(flag, "expected a nonnegative integer, got '" + text + "'");
  }
  return BigInt(text);
}

std::size_t range_start(const Params& p) {
  if (p.from < 0) return p.n;
  if (static_cast<std::size_t>(p.from) > p.n) throw UsageError("--from", "must not exceed --n");
  return static_cast<std::size_t>(p.from);
}

Report single(std::string command, std::string column, json value) {
  Report report;
  report.command = std::move(command);
  report.columns = {std::move(column)};
  report.rows = {{std::move(value)}};
  return report;
}

// generate

Report generate_mechanical(Context& c) {
  MechanicalParams params{real("--sigma", c.p.sigma), real("--rho", c.p.rho),
                          c.p.flavor == "upper" ? Flavor::upper : Flavor::lower};
  try {
    params.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError("--sigma/--rho", e.what());
  }
  Report r = single("generate mechanical", "word",
                    mechanical_word(params, c.p.length).str(c.alphabet));
  r.params = {{"sigma", params.sigma.to_string()},
              {"rho", params.rho.to_string()},
              {"flavor", c.p.flavor},
              {"length", c.p.length}};
  return r;
}

Report generate_rotation(Context& c) {
  const ExactReal alpha = real("--alpha", c.p.alpha);
  const ExactReal rho = real("--rho", c.p.rho);
  const ExactReal sigma = real("--sigma", c.p.sigma);
  if (alpha < 0 || alpha >= 1) throw UsageError("--alpha", "must lie in [0, 1)");
  if (rho < 0 || rho >= 1) throw UsageError("--rho", "must lie in [0, 1)");
  if (sigma <= 0 || sigma >= 1) throw UsageError("--sigma", "must lie in (0, 1)");
  Report r;
  try {
    r = single("generate rotation", "word",
               rotation_word(alpha, rho, sigma, c.p.length).str(c.alphabet));
  } catch (const MixedRadicalError& e) {
    throw UsageError("--rho", e.what());
  }
  r.params = {{"alpha", alpha.to_string()},
              {"rho", rho.to_string()},
              {"sigma", sigma.to_string()},
              {"length", c.p.length}};
  return r;
}

Report generate_characteristic(Context& c) {
  const auto d = directive(c.p.d);
  Report r = single("generate characteristic", "word",
                    characteristic_prefix(d, c.p.length).str(c.alphabet));
  r.params = {{"d", d.to_string()}, {"length", c.p.length}};
  return r;
}

Report generate_standard(Context& c) {
  const auto d = directive(c.p.d);
  if (c.p.index < -1) throw UsageError("--n", "standard words start at s_{-1}");
  const std::size_t n = c.p.index < 0 ? 0 : static_cast<std::size_t>(c.p.index);
  std::vector<BinaryWord> s;
  try {
    s = standard_words(d, n);
  } catch (const InvalidArgument& e) {
    throw UsageError("--n", e.what());
  }
  Report r = single("generate standard", "word",
                    s[static_cast<std::size_t>(c.p.index + 1)].str(c.alphabet));
  r.params = {{"d", d.to_string()}, {"n", c.p.index}};
  return r;
}

Report generate_central(Context& c) {
  const auto d = directive(c.p.d);
  BinaryWord w;
  try {
    w = central_word(d, c.p.n, c.p.j);
  } catch (const InvalidArgument& e) {
    throw UsageError("--n/--j", e.what());
  }
  Report r = single("generate central", "word", w.str(c.alphabet));
  r.params = {{"d", d.to_string()}, {"n", c.p.n}, {"j", c.p.j}};
  return r;
}

// count

Report count_table(std::string command, std::vector<std::string> columns, const Params& p,
                   const std::function<std::vector<json>(std::size_t)>& row) {
  Report r;
  r.command = std::move(command);
  r.columns = std::move(columns);
  r.keys = 1;
  for (std::size_t n = range_start(p); n <= p.n; ++n) r.rows.push_back(row(n));
  r.params = {{"from", range_start(p)}, {"n", p.n}};
  return r;
}

Report count_sturmian(Context& c) {
  return count_table("count sturmian", {"n", "p_s"}, c.p, [](std::size_t n) {
    return std::vector<json>{n, big(sturmian_total(n))};
  });
}

Report count_balanced(Context& c) {
  return count_table("count balanced", {"n", "balanced"}, c.p, [&](std::size_t n) {
    return std::vector<json>{n, balanced_count(n, c.caps.balanced, c.jobs)};
  });
}

Report count_rotation_faces(Context& c) {
  if (range_start(c.p) == 0) throw UsageError("--n", "the arrangement order starts at 1");
  return count_table("count rotation-faces", {"n", "f"}, c.p, [](std::size_t n) {
    return std::vector<json>{n, big(rotation_face_count(n))};
  });
}

Report count_rotation_words(Context& c) {
  const ExactReal sigma = real("--sigma", c.p.sigma);
  if (sigma.is_rational() || sigma <= 0 || sigma >= 1) {
    throw UsageError("--sigma", "must be irrational and lie in (0, 1)");
  }
  if (range_start(c.p) == 0) throw UsageError("--n", "word lengths start at 1");
  Report r = count_table("count rotation-words", {"n", "r", "f"}, c.p, [&](std::size_t n) {
    const json f = n >= 2 ? big(rotation_face_count(n - 1)) : json();
    return std::vector<json>{n, rotation_word_count(sigma, n, c.caps.rotation, c.jobs), f};
  });
  r.params["sigma"] = sigma.to_string();
  return r;
}

Report count_palindrome_factors(Context& c) {
  const auto d = directive(c.p.d);
  Report r = count_table("count palindrome-factors", {"n", "h"}, c.p, [&](std::size_t n) {
    return std::vector<json>{n, palindrome_factor_count(d, n, c.caps.stabilize)};
  });
  r.params["d"] = d.to_string();
  return r;
}

// ostrowski

Report ostrowski_encode(Context& c) {
  const auto d = directive(c.p.d);
  const BigInt n = big_flag("--n", c.p.number);
  OstrowskiRep rep;
  try {
    rep = encode(n, d);
  } catch (const InvalidArgument& e) {
    throw UsageError("--d", e.what());
  }
  Report r = single("ostrowski encode", "rep", rep.to_string());
  r.params = {{"d", d.to_string()}, {"n", big(n)}};
  return r;
}

Report ostrowski_decode(Context& c) {
  const auto d = directive(c.p.d);
  const OstrowskiRep rep = digits_flag(c.p.digits, d);
  BigInt n;
  try {
    n = decode(rep);
  } catch (const InvalidArgument& e) {
    throw UsageError("--digits", e.what());
  }
  Report r = single("ostrowski decode", "n", big(n));
  r.params = {{"d", d.to_string()}, {"digits", rep.to_string()}};
  return r;
}

Report ostrowski_predicate(Context& c, const std::string& name,
                           bool (*predicate)(const OstrowskiRep&)) {
  const auto d = directive(c.p.d);
  const OstrowskiRep rep = digits_flag(c.p.digits, d);
  bool holds = false;
  try {
    holds = predicate(rep);
  } catch (const InvalidArgument& e) {
    throw UsageError("--digits", e.what());
  }
  Report r = single("ostrowski " + name, name, holds);
  r.params = {{"d", d.to_string()}, {"digits", rep.to_string()}};
  return r;
}

Report ostrowski_enumerate(Context& c) {
  const auto d = directive(c.p.d);
  const BigInt n = big_flag("--n", c.p.number);
  if (n > std::numeric_limits<std::uint64_t>::max()) throw UsageError("--n", "too large");
  Report r;
  r.command = "ostrowski enumerate";
  r.columns = {"rep"};
  for (const auto& rep : enumerate_valid_reps(static_cast<std::uint64_t>(n), d, c.caps.ostrowski)) {
    r.rows.push_back({rep.to_string()});
  }
  r.params = {{"d", d.to_string()}, {"n", big(n)}};
  return r;
}

// pal

Report pal_length_cmd(Context& c) {
  const BinaryWord w = word_flag(c.p.word);
  Report r = single("pal length", "pal_length", pal_length(w));
  r.params = {{"word", w.str(c.alphabet)}};
  return r;
}

Report pal_profile(Context& c) {
  const auto d = directive(c.p.d);
  Report r;
  r.command = "pal profile";
  r.columns = {"prefix_length", "pal_length"};
  for (const auto& [length, value] : pal_length_profile(d, c.p.length, c.caps.profile)) {
    r.rows.push_back({length, value});
  }
  r.params = {{"d", d.to_string()}, {"length", c.p.length}};
  return r;
}

Report pal_rich(Context& c) {
  BinaryWord w;
  Report r;
  r.command = "pal rich";
  if (!c.p.word.empty()) {
    w = word_flag(c.p.word);
    r.params = {{"word", w.str(c.alphabet)}};
  } else if (!c.p.d.empty()) {
    const auto d = directive(c.p.d);
    w = characteristic_prefix(d, c.p.length);
    r.params = {{"d", d.to_string()}, {"length", c.p.length}};
  } else {
    throw UsageError("--word", "give --word or --d with --length");
  }
  const PalindromeCensus census = distinct_palindromic_factors(w);
  r.columns = {"length", "palindromes", "rich"};
  r.keys = 1;
  r.rows = {{w.size(), census.count, census.rich}};
  return r;
}

Report pal_starting_at(Context& c) {
  const BinaryWord w = word_flag(c.p.word);
  if (c.p.pos >= w.size()) throw UsageError("--pos", "past the end of the word");
  Report r;
  r.command = "pal starting-at";
  r.columns = {"length"};
  const std::size_t max_length = c.p.max_length == 0 ? w.size() : c.p.max_length;
  for (std::size_t length : palindromes_starting_at(w, c.p.pos, max_length)) {
    r.rows.push_back({length});
  }
  r.params = {{"word", w.str(c.alphabet)}, {"pos", c.p.pos}, {"max_length", max_length}};
  return r;
}

// verify

Report finish(Report r, std::size_t failures, const std::string& what) {
  r.pass = failures == 0;
  r.summary = std::to_string(r.rows.size()) + " " + what + ", " + std::to_string(failures) +
              " failed";
  return r;
}

Report verify_tpr(Context& c) {
  const auto d = directive(c.p.d);
  CharacteristicWord w(d);
  Report r;
  r.command = "verify tpr";
  r.columns = {"p1", "p2", "rep_p1", "m", "y_m", "rep_p2", "fallback_used"};
  std::size_t failures = 0;
  std::size_t fallbacks = 0;
  for (const auto& occ : palindromic_occurrences(d, c.p.max_p2)) {
    try {
      const TprWitness witness = tpr_find_witness(w, occ);
      if (!tpr_check_witness(d, occ, witness)) throw TheoremViolation("witness check failed");
      fallbacks += witness.fallback_used ? 1 : 0;
      r.rows.push_back({occ.p1, occ.p2, witness.p1_rep.to_string(), witness.m, witness.y_m,
                        witness.p2_rep.to_string(), witness.fallback_used});
    } catch (const TheoremViolation& e) {
      ++failures;
      *c.err << "tpr: no witness for (" << occ.p1 << ".." << occ.p2 << "]: " << e.what() << '\n';
      r.rows.push_back({occ.p1, occ.p2, nullptr, nullptr, nullptr, nullptr, nullptr});
    }
  }
  r.params = {{"d", d.to_string()}, {"max_p2", c.p.max_p2}};
  r.extra = {{"occurrences", r.rows.size()}, {"fallbacks", fallbacks}, {"failures", failures}};
  r = finish(std::move(r), failures, "occurrences");
  r.summary += ", " + std::to_string(fallbacks) + " via search";
  return r;
}

Report verify_zd(Context& c) {
  const auto d = directive(c.p.d);
  const ZdReport zd = zd_max_gap(d, c.p.n_max, c.caps.ostrowski);
  Report r;
  r.command = "verify zd";
  r.columns = {"n", "gap", "ok"};
  r.keys = 1;
  std::size_t failures = 0;
  for (std::size_t n = 0; n < zd.gap_by_n.size(); ++n) {
    const bool ok = zd.gap_by_n[n] <= c.p.bound;
    failures += ok ? 0 : 1;
    r.rows.push_back({n, zd.gap_by_n[n], ok});
  }
  r.params = {{"d", d.to_string()}, {"n_max", c.p.n_max}, {"bound", c.p.bound}};
  r.extra["max_gap"] = zd.max_gap;
  if (zd.witness) {
    r.extra["witness"] = {{"n", zd.witness->n},
                          {"digit", zd.witness->digit},
                          {"r1", zd.witness->r1.to_string()},
                          {"r2", zd.witness->r2.to_string()}};
  }
  r = finish(std::move(r), failures, "values of N");
  r.summary += ", max gap " + std::to_string(zd.max_gap);
  if (zd.witness) {
    r.summary += " first at N=" + std::to_string(zd.witness->n) + " digit " +
                 std::to_string(zd.witness->digit) + " (" + zd.witness->r1.to_string() + " vs " +
                 zd.witness->r2.to_string() + ")";
  }
  return r;
}

Report verify_h_pattern(Context& c) {
  const auto d = directive(c.p.d);
  Report r;
  r.command = "verify h-pattern";
  r.columns = {"n", "h", "expected", "ok"};
  r.keys = 1;
  std::size_t failures = 0;
  for (std::size_t n = 1; n <= c.p.n_max; ++n) {
    const std::size_t h = palindrome_factor_count(d, n, c.caps.stabilize);
    const std::size_t expected = n % 2 == 1 ? 2 : 1;
    failures += h == expected ? 0 : 1;
    r.rows.push_back({n, h, expected, h == expected});
  }
  r.params = {{"d", d.to_string()}, {"n_max", c.p.n_max}};
  return finish(std::move(r), failures, "lengths");
}

Report verify_balanced_vs_formula(Context& c) {
  Report r;
  r.command = "verify balanced-vs-formula";
  r.columns = {"n", "formula", "balanced", "ok"};
  r.keys = 1;
  std::size_t failures = 0;
  for (std::size_t n = 0; n <= c.p.n_max; ++n) {
    const BigInt formula = sturmian_total(n);
    const std::uint64_t oracle = balanced_count(n, c.caps.balanced, c.jobs);
    const bool ok = formula == oracle;
    failures += ok ? 0 : 1;
    r.rows.push_back({n, big(formula), oracle, ok});
  }
  r.params = {{"n_max", c.p.n_max}};
  return finish(std::move(r), failures, "lengths");
}

Report verify_rotation_formula(Context& c) {
  const ExactReal sigma = real("--sigma", c.p.sigma);
  if (!in_rotation_formula_range(sigma) || sigma.is_rational()) {
    throw UsageError("--sigma", "must be irrational and lie in (3/8, 2/5)");
  }
  if (c.p.n_min < 9) throw UsageError("--n-min", "the formula applies from length 9 on");
  Report r;
  r.command = "verify rotation-formula";
  r.columns = {"n", "r", "predicted", "ok"};
  r.keys = 1;
  std::size_t failures = 0;
  for (std::size_t n = c.p.n_min; n <= c.p.n_max; ++n) {
    const std::uint64_t count = rotation_word_count(sigma, n, c.caps.rotation, c.jobs);
    const BigInt predicted = rotation_formula(n - 1);
    const bool ok = predicted == count;
    failures += ok ? 0 : 1;
    r.rows.push_back({n, count, big(predicted), ok});
  }
  r.params = {{"sigma", sigma.to_string()}, {"n_min", c.p.n_min}, {"n_max", c.p.n_max}};
  return finish(std::move(r), failures, "lengths");
}

Report verify_hard_prefix(Context& c) {
  const auto d = directive(c.p.d);
  HardPrefix hard;
  try {
    hard = construct_hard_prefix(d, c.p.q);
  } catch (const InvalidArgument& e) {
    throw UsageError("--d", e.what());
  }
  if (hard.n > c.caps.profile) {
    throw CapExceeded("prefix length " + hard.n.str() + " exceeds the profile cap " +
                      std::to_string(c.caps.profile));
  }
  const std::size_t length = pal_length(characteristic_prefix(d, static_cast<std::size_t>(hard.n)));
  std::string positions;
  for (std::size_t pos : hard.positions) {
    positions += (positions.empty() ? "" : ";") + std::to_string(pos);
  }
  Report r;
  r.command = "verify hard-prefix";
  r.columns = {"n", "rep", "positions", "pal_length", "ok"};
  const bool ok = length >= c.p.q + 1;
  r.rows = {{big(hard.n), hard.rep.to_string(), positions, length, ok}};
  r.params = {{"d", d.to_string()}, {"q", c.p.q}};
  return finish(std::move(r), ok ? 0 : 1, "prefix");
}

using Handler = std::function<Report(Context&)>;

struct Command {
  std::string group;
  std::string name;
  std::string description;
  std::function<void(CLI::App&, Params&)> flags;
  Handler handler;
};

void add_d(CLI::App& app, Params& p) {
  app.add_option("--d", p.d, "directive sequence, e.g. 1,1,(1), (2) or fib")->required();
}
void add_length(CLI::App& app, Params& p) {
  app.add_option("--length", p.length, "word length")->required();
}
void add_range(CLI::App& app, Params& p) {
  app.add_option("--n", p.n, "largest n")->required();
  app.add_option("--from", p.from, "smallest n (default: --n only)")
      ->check(CLI::NonNegativeNumber);
}

std::vector<Command> commands() {
  return {
      {"generate", "mechanical", "lower or upper mechanical word",
       [](CLI::App& app, Params& p) {
         app.add_option("--sigma", p.sigma, "slope, e.g. (3-sqrt(5))/2")->required();
         app.add_option("--rho", p.rho, "intercept (default 0)");
         app.add_option("--flavor", p.flavor, "lower or upper")
             ->check(CLI::IsMember({"lower", "upper"}));
         add_length(app, p);
       },
       generate_mechanical},
      {"generate", "rotation", "rotation word r[q] = 0 iff {q alpha + rho} <= 1 - sigma",
       [](CLI::App& app, Params& p) {
         app.add_option("--alpha", p.alpha, "rotation angle")->required();
         app.add_option("--rho", p.rho, "starting point (default 0)");
         app.add_option("--sigma", p.sigma, "interval parameter")->required();
         add_length(app, p);
       },
       generate_rotation},
      {"generate", "characteristic", "prefix of the characteristic word",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         add_length(app, p);
       },
       generate_characteristic},
      {"generate", "standard", "standard word s_n",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--n", p.index, "index, -1 or more")->required();
       },
       generate_standard},
      {"generate", "central", "central word c_{n,j}",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--n", p.n, "index")->required();
         app.add_option("--j", p.j, "power of s_n in front (default 0)");
       },
       generate_central},
      {"count", "sturmian", "factors of length n over all Sturmian words",
       [](CLI::App& app, Params& p) { add_range(app, p); }, count_sturmian},
      {"count", "balanced", "balanced words of length n, by enumeration",
       [](CLI::App& app, Params& p) { add_range(app, p); }, count_balanced},
      {"count", "rotation-faces", "faces f(n) of the order-n arrangement",
       [](CLI::App& app, Params& p) { add_range(app, p); }, count_rotation_faces},
      {"count", "rotation-words", "rotation words of length n for a fixed sigma",
       [](CLI::App& app, Params& p) {
         app.add_option("--sigma", p.sigma, "irrational sigma in (0, 1)")->required();
         add_range(app, p);
       },
       count_rotation_words},
      {"count", "palindrome-factors", "palindromic factors of length n of the characteristic word",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         add_range(app, p);
       },
       count_palindrome_factors},
      {"ostrowski", "encode", "canonical representation of N",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--n", p.number, "nonnegative integer")->required();
       },
       ostrowski_encode},
      {"ostrowski", "decode", "value of a digit string",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--digits", p.digits, "most significant first, e.g. 100001 or 1.12.0")
             ->required();
       },
       ostrowski_decode},
      {"ostrowski", "legal", "every digit k_i <= d_i",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--digits", p.digits, "digit string")->required();
       },
       [](Context& c) { return ostrowski_predicate(c, "legal", is_legal); }},
      {"ostrowski", "valid", "the digit word is a prefix of the characteristic word",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--digits", p.digits, "digit string")->required();
       },
       [](Context& c) { return ostrowski_predicate(c, "valid", is_valid); }},
      {"ostrowski", "enumerate", "every valid representation of N",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--n", p.number, "nonnegative integer")->required();
       },
       ostrowski_enumerate},
      {"pal", "length", "palindromic length of a word",
       [](CLI::App& app, Params& p) {
         app.add_option("--word", p.word, "word over 01 or ab")->required();
       },
       pal_length_cmd},
      {"pal", "profile", "record palindromic lengths of characteristic prefixes",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         add_length(app, p);
       },
       pal_profile},
      {"pal", "rich", "distinct palindromic factors and richness",
       [](CLI::App& app, Params& p) {
         app.add_option("--word", p.word, "word over 01 or ab");
         app.add_option("--d", p.d, "directive sequence (with --length)");
         app.add_option("--length", p.length, "prefix length");
       },
       pal_rich},
      {"pal", "starting-at", "lengths of palindromes starting at a position",
       [](CLI::App& app, Params& p) {
         app.add_option("--word", p.word, "word over 01 or ab")->required();
         app.add_option("--pos", p.pos, "0-based start")->required();
         app.add_option("--max-length", p.max_length, "longest length reported (default all)");
       },
       pal_starting_at},
      {"verify", "tpr", "witness for every palindromic occurrence with p2 <= max",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--max-p2", p.max_p2, "largest end position")->required();
       },
       verify_tpr},
      {"verify", "zd", "z-distance between valid representations of the same N",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--n-max", p.n_max, "largest N")->required();
         app.add_option("--bound", p.bound, "allowed gap (default 3)");
       },
       verify_zd},
      {"verify", "h-pattern", "h(n) = 2 for odd n and 1 for even n",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--n-max", p.n_max, "largest n")->required();
       },
       verify_h_pattern},
      {"verify", "balanced-vs-formula", "closed form against balanced-word enumeration",
       [](CLI::App& app, Params& p) {
         app.add_option("--n-max", p.n_max, "largest n")->required();
       },
       verify_balanced_vs_formula},
      {"verify", "rotation-formula", "rotation-word count against f(n-1)/2 - 7 or - 8",
       [](CLI::App& app, Params& p) {
         app.add_option("--sigma", p.sigma, "irrational sigma in (3/8, 2/5)")->required();
         app.add_option("--n-min", p.n_min, "smallest word length (default 9)");
         app.add_option("--n-max", p.n_max, "largest word length")->required();
       },
       verify_rotation_formula},
      {"verify", "hard-prefix", "prefix that needs more than Q palindromes",
       [](CLI::App& app, Params& p) {
         add_d(app, p);
         app.add_option("--q", p.q, "Q")->required();
       },
       verify_hard_prefix},
  };
}

}  // namespace

Caps::Caps()
    : balanced(kDefaultBalancedCap),
      rotation(kDefaultRotationCap),
      ostrowski(kDefaultOstrowskiCap),
      profile(kDefaultProfileCap),
      stabilize(kDefaultStabilizeCap) {}

Caps Caps::parse(std::string_view spec, Caps base) {
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t end = std::min(spec.find(',', start), spec.size());
    const std::string_view item = spec.substr(start, end - start);
    start = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("STURM_CAP: expected name=value, got '" + std::string(item) + "'");
    }
    const std::string_view name = item.substr(0, eq);
    const std::uint64_t value = parse_positive(name, item.substr(eq + 1));
    if (name == "balanced") {
      base.balanced = value;
    } else if (name == "rotation") {
      base.rotation = value;
    } else if (name == "ostrowski") {
      base.ostrowski = value;
    } else if (name == "profile") {
      base.profile = value;
    } else if (name == "stabilize") {
      base.stabilize = value;
    } else {
      throw InvalidArgument("STURM_CAP: unknown cap '" + std::string(name) + "'");
    }
  }
  return base;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sturmian words: generation, counting, numeration and palindromes", "sturm"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string format = "text";
  std::string alphabet = "01";
  Context context;
  context.err = &err;
  app.add_option("--format", format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--alphabet", alphabet, "symbols for printed words: 01 or ab")
      ->check(CLI::IsMember({"01", "ab"}));
  app.add_option("--jobs", context.jobs, "worker threads for enumerations, 0 = all cores");

  const auto table = commands();
  std::map<std::string, CLI::App*> groups;
  std::map<const CLI::App*, const Command*> leaves;
  for (const auto& command : table) {
    CLI::App*& group = groups[command.group];
    if (group == nullptr) {
      static const std::map<std::string, std::string> kGroupHelp{
          {"generate", "print words"},
          {"count", "tables of closed forms and enumerations"},
          {"ostrowski", "Ostrowski numeration"},
          {"pal", "palindromic factors and palindromic length"},
          {"verify", "checks with a pass/fail summary (exit 2 on failure)"}};
      group = app.add_subcommand(command.group, kGroupHelp.at(command.group));
      group->require_subcommand(1);
    }
    CLI::App* leaf = group->add_subcommand(command.name, command.description);
    command.flags(*leaf, context.p);
    leaves[leaf] = &command;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Command* chosen = nullptr;
  for (const auto& [leaf, command] : leaves) {
    if (leaf->parsed()) chosen = command;
  }
  if (chosen == nullptr) {
    err << "no command given\n";
    return kExitUsage;
  }

  try {
    if (const char* env = std::getenv("STURM_CAP")) context.caps = Caps::parse(env);
    context.alphabet = alphabet == "ab" ? Alphabet::letters : Alphabet::binary;
    const Report report = chosen->handler(context);
    const Format chosen_format =
        format == "csv" ? Format::csv : (format == "json" ? Format::json : Format::text);
    emit(report, chosen_format, out, err);
    return report.pass.value_or(true) ? kExitOk : kExitFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapExceeded& e) {
    err << "refused: " << e.what() << " (raise it with STURM_CAP)\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace sturm::cli
