#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "lmprng/lmprng.hpp"

namespace lmprng::cli {

namespace {

using json = nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string real(double v) { return fmt::format("{:.9g}", v); }

// Output sink: a file, or `fallback` for "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool binary = false) : stream_(&fallback) {
    if (path != "-") {
      file_.open(path, binary ? std::ios::out | std::ios::binary | std::ios::trunc : std::ios::out | std::ios::trunc);
      if (!file_) throw IoError("cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void close(const std::string& path) {
    stream_->flush();
    if (!*stream_) throw IoError("write to '" + path + "' failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string slurp(const std::string& path, bool binary) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, binary ? std::ios::in | std::ios::binary : std::ios::in);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One integer in [0, 65535] per line; blank lines are skipped.
ValueStream parse_values(const std::string& text) {
  ValueStream values;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    const std::string_view tok(line.data() + first, last - first + 1);
    unsigned long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError(line_no, "expected an unsigned integer, got '" + std::string(tok) + "'");
    }
    if (v > kScale) throw ParseError(line_no, "value " + std::string(tok) + " outside [0, 65535]");
    values.push_back(static_cast<std::uint16_t>(v));
  }
  return values;
}

void write_values_csv(std::ostream& os, std::span<const std::uint16_t> values) {
  for (std::uint16_t v : values) os << v << '\n';
}

EwmaWeights parse_weights(const std::string& spec) {
  std::array<std::uint32_t, 3> w{};
  std::size_t pos = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t comma = spec.find(',', pos);
    if ((i < 2) != (comma != std::string::npos)) throw UsageError("--weights expects old,new,denom");
    const std::string part = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), w[i]);
    if (ec != std::errc{} || ptr != part.data() + part.size()) throw UsageError("--weights expects old,new,denom");
    pos = comma + 1;
  }
  try {
    return EwmaWeights{w[0], w[1], w[2]};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::pair<double, double> parse_range(const std::string& spec) {
  const std::size_t dots = spec.find("..");
  if (dots == std::string::npos) throw UsageError("--range expects lo..hi");
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string a = spec.substr(0, dots), b = spec.substr(dots + 2);
    const double lo = std::stod(a, &used_lo);
    const double hi = std::stod(b, &used_hi);
    if (used_lo != a.size() || used_hi != b.size()) throw UsageError("--range expects lo..hi");
    if (!(lo < hi)) throw UsageError("--range requires lo < hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--range expects lo..hi");
  }
}

void write_manifest(const std::string& path, const json& manifest) {
  std::ofstream f(path, std::ios::out | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << manifest.dump(2) << '\n';
  if (!f) throw IoError("write to '" + path + "' failed");
}

json manifest_base(const std::string& command) {
  return json{{"command", command}, {"tool", "lmprng"}, {"version", kVersion}};
}

const char* to_string(Semantics s) { return s == Semantics::Hardware ? "hw" : "poc"; }
const char* to_string(ZeroPolicy z) { return z == ZeroPolicy::Faithful ? "faithful" : "perturb"; }

const std::map<std::string, Semantics> kSemantics{{"hw", Semantics::Hardware}, {"poc", Semantics::Poc}};
const std::map<std::string, ZeroPolicy> kZeroPolicy{{"faithful", ZeroPolicy::Faithful},
                                                     {"perturb", ZeroPolicy::PerturbToOne}};

// ---------------------------------------------------------------- generate

struct GenerateFlags {
  std::optional<int> seed;
  std::string seed_file;
  std::size_t n = 0;
  Semantics semantics = Semantics::Hardware;
  ZeroPolicy zero_policy = ZeroPolicy::Faithful;
  std::string format = "csv";
  std::string weights = "40,10,50";
  std::string out = "-";
  std::string manifest;
};

std::uint16_t resolve_seed(const GenerateFlags& f, std::string& source) {
  if (f.seed) {
    source = "flag";
    return static_cast<std::uint16_t>(*f.seed);
  }
  if (!f.seed_file.empty()) {
    source = "file";
    const ValueStream v = parse_values(slurp(f.seed_file, false));
    if (v.empty()) throw ParseError(1, "seed file holds no value");
    return v.front();
  }
  source = "entropy";
  std::random_device rd;
  return static_cast<std::uint16_t>(rd() & 0xFFFFu);
}

int cmd_generate(const GenerateFlags& f, std::ostream& out, std::ostream& err) {
  GeneratorConfig cfg;
  std::string seed_source;
  cfg.seed = resolve_seed(f, seed_source);
  cfg.n = f.n;
  cfg.semantics = f.semantics;
  cfg.zero_policy = f.zero_policy;
  cfg.weights = parse_weights(f.weights);
  if (cfg.semantics == Semantics::Poc && cfg.weights != EwmaWeights{}) {
    throw UsageError("--weights other than 40,10,50 require --semantics hw");
  }

  const GeneratorTrace trace = generate_traced(cfg);
  const bool frames = f.format == "frames";
  Sink sink(f.out, out, frames);
  if (frames) {
    write_frames(sink.stream(), encode_stream(trace.outputs));
  } else {
    write_values_csv(sink.stream(), trace.outputs);
  }
  sink.close(f.out);
  if (trace.zero_perturbations > 0) {
    err << "note: map state reset from 0 to 1 " << trace.zero_perturbations << " time(s)\n";
  }

  const std::string manifest_path = !f.manifest.empty() ? f.manifest : (f.out == "-" ? "" : f.out + ".manifest.json");
  if (!manifest_path.empty()) {
    json m = manifest_base("generate");
    m["config"] = {{"seed", cfg.seed},
                   {"seed_source", seed_source},
                   {"sanitized_seed", sanitize_seed(cfg.seed).value},
                   {"n", cfg.n},
                   {"semantics", to_string(cfg.semantics)},
                   {"zero_policy", to_string(cfg.zero_policy)},
                   {"weights", {cfg.weights.old_w(), cfg.weights.new_w(), cfg.weights.denom()}},
                   {"r", 4},
                   {"format", f.format}};
    m["zero_perturbations"] = trace.zero_perturbations;
    m["outputs"] = json::array({f.out});
    write_manifest(manifest_path, m);
  }
  return kOk;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeFlags {
  std::string input;
  bool frames = false;
  bool dedupe = false;
  bool no_paper_compat = false;
  bool zero_prefix = false;
  std::size_t bins = 10;
  std::string range = "0..65535";
  std::size_t points = 200;
  std::string out_prefix = "analysis";
};

int cmd_analyze(const AnalyzeFlags& f, std::ostream& out, std::ostream& err) {
  const auto [lo, hi] = parse_range(f.range);
  if (f.bins == 0) throw UsageError("--bins must be at least 1");
  if (f.points < 2) throw UsageError("--points must be at least 2");

  ValueStream values;
  if (f.frames) {
    const std::string raw = slurp(f.input, true);
    const std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size());
    values = decode_stream(bytes);
    if (f.dedupe) values = dedupe_consecutive(values, !f.no_paper_compat);
  } else {
    values = parse_values(slurp(f.input, false));
  }
  if (f.zero_prefix) values.insert(values.begin(), 256, std::uint16_t{0});
  if (values.empty()) throw EmptyInput("no values to analyze");

  const HistogramReport report = histogram<std::uint16_t>(values, f.bins, lo, hi);
  std::optional<GofResult> gof;
  std::vector<std::pair<double, double>> curve;
  if (report.std > 0.0) {
    curve = fit_normal_overlay(report, f.points);
    try {
      gof = chi_square_gof(report);
    } catch (const InsufficientBins& e) {
      err << "note: " << e.what() << '\n';
    }
  } else {
    err << "note: zero variance; skewness, kurtosis and the normal overlay are undefined\n";
  }

  std::vector<std::string> outputs;
  if (f.out_prefix == "-") {
    write_histogram_csv(out, report);
    out << '\n';
    write_summary_csv(out, report, gof);
    out << '\n';
    write_overlay_csv(out, curve);
  } else {
    auto emit = [&](const std::string& suffix, auto&& writer) {
      const std::string path = f.out_prefix + suffix;
      Sink sink(path, out);
      writer(sink.stream());
      sink.close(path);
      outputs.push_back(path);
    };
    emit(".histogram.csv", [&](std::ostream& os) { write_histogram_csv(os, report); });
    emit(".summary.csv", [&](std::ostream& os) { write_summary_csv(os, report, gof); });
    emit(".overlay.csv", [&](std::ostream& os) { write_overlay_csv(os, curve); });

    json m = manifest_base("analyze");
    m["config"] = {{"input", f.input},       {"frames", f.frames},   {"dedupe", f.dedupe},
                   {"paper_compat", !f.no_paper_compat}, {"zero_prefix", f.zero_prefix},
                   {"bins", f.bins},         {"range", {lo, hi}},    {"points", f.points}};
    m["values_analyzed"] = values.size();
    m["outputs"] = outputs;
    write_manifest(f.out_prefix + ".manifest.json", m);
  }
  return kOk;
}

// ------------------------------------------------------------------ census

struct CensusFlags {
  int r = 4;
  unsigned workers = 1;
  std::string out = "-";
};

int cmd_census(const CensusFlags& f, std::ostream& out, std::ostream&) {
  MapParams params{4};
  try {
    params = MapParams{f.r};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const CensusTable table = cycle_census(params, f.workers);

  Sink sink(f.out, out);
  std::ostream& os = sink.stream();
  const double total = static_cast<double>(table.total_seeds());
  os << "representative,cycle_length,basin_size,basin_fraction\n";
  for (const CycleSummary& c : table.cycles) {
    os << c.representative << ',' << c.cycle_len << ',' << c.basin_size << ','
       << real(static_cast<double>(c.basin_size) / total) << '\n';
  }
  os << "total," << table.cycles.size() << ',' << table.total_seeds() << ',' << real(table.zero_basin_fraction)
     << '\n';
  sink.close(f.out);

  if (f.out != "-") {
    json m = manifest_base("census");
    m["config"] = {{"r", f.r}};
    m["distinct_cycles"] = table.cycles.size();
    m["zero_basin_fraction"] = table.zero_basin_fraction;
    m["outputs"] = json::array({f.out});
    write_manifest(f.out + ".manifest.json", m);
  }
  return kOk;
}

// ----------------------------------------------------------------- compare

struct CompareFlags {
  int seed = 1;
  std::size_t n = 0;
  double threshold = 1.0;
  Semantics a = Semantics::Hardware;
  Semantics b = Semantics::Poc;
  std::string out = "-";
};

int cmd_compare(const CompareFlags& f, std::ostream& out, std::ostream& err) {
  auto run_one = [&](Semantics s) {
    GeneratorConfig cfg;
    cfg.seed = static_cast<std::uint16_t>(f.seed);
    cfg.n = f.n;
    cfg.semantics = s;
    return generate_traced(cfg);
  };
  const GeneratorTrace ta = run_one(f.a);
  const GeneratorTrace tb = run_one(f.b);

  std::optional<std::size_t> first_map, first_out;
  double max_map = 0.0, max_out = 0.0;
  Sink sink(f.out, out);
  std::ostream& os = sink.stream();
  os << "step,map_a,map_b,map_diff,out_a,out_b,out_diff\n";
  for (std::size_t i = 0; i < f.n; ++i) {
    const double map_diff = std::abs(ta.map_states[i] - tb.map_states[i]);
    const double out_diff = std::abs(static_cast<double>(ta.outputs[i]) - static_cast<double>(tb.outputs[i]));
    if (!first_map && map_diff > f.threshold) first_map = i + 1;
    if (!first_out && out_diff > f.threshold) first_out = i + 1;
    max_map = std::max(max_map, map_diff);
    max_out = std::max(max_out, out_diff);
    os << i + 1 << ',' << real(ta.map_states[i]) << ',' << real(tb.map_states[i]) << ',' << real(map_diff) << ','
       << ta.outputs[i] << ',' << tb.outputs[i] << ',' << real(out_diff) << '\n';
  }
  sink.close(f.out);

  auto step = [](const std::optional<std::size_t>& s) { return s ? std::to_string(*s) : std::string("none"); };
  const std::string summary_path = f.out == "-" ? "-" : f.out + ".summary.csv";
  Sink summary(summary_path, err);
  summary.stream() << "key,value\n"
                   << "semantics_a," << to_string(f.a) << '\n'
                   << "semantics_b," << to_string(f.b) << '\n'
                   << "sanitized_seed," << sanitize_seed(static_cast<std::uint16_t>(f.seed)).value << '\n'
                   << "n," << f.n << '\n'
                   << "threshold," << real(f.threshold) << '\n'
                   << "first_map_divergence_step," << step(first_map) << '\n'
                   << "first_output_divergence_step," << step(first_out) << '\n'
                   << "max_map_diff," << real(max_map) << '\n'
                   << "max_output_diff," << real(max_out) << '\n';
  summary.close(summary_path);

  if (f.out != "-") {
    json m = manifest_base("compare");
    m["config"] = {{"seed", f.seed}, {"n", f.n},           {"threshold", f.threshold},
                   {"a", to_string(f.a)}, {"b", to_string(f.b)}};
    m["outputs"] = json::array({f.out, summary_path});
    write_manifest(f.out + ".manifest.json", m);
  }
  return kOk;
}

// ---------------------------------------------------------- encode/decode

struct CodecFlags {
  std::string input = "-";
  std::string out = "-";
  bool dedupe = false;
  bool no_paper_compat = false;
};

int cmd_encode(const CodecFlags& f, std::ostream& out) {
  const ValueStream values = parse_values(slurp(f.input, false));
  Sink sink(f.out, out, true);
  write_frames(sink.stream(), encode_stream(values));
  sink.close(f.out);
  return kOk;
}

int cmd_decode(const CodecFlags& f, std::ostream& out) {
  const std::string raw = slurp(f.input, true);
  ValueStream values =
      decode_stream(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
  if (f.dedupe) values = dedupe_consecutive(values, !f.no_paper_compat);
  Sink sink(f.out, out);
  write_values_csv(sink.stream(), values);
  sink.close(f.out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{fmt::format(
      "lmprng {}: fixed-point logistic-map PRNG with EWMA Gaussianizer.\n"
      "Wire frames: 2 bytes per value, low byte first (original link: {} baud, 8 data bits, no parity, {} stop bit).",
      kVersion, kBaudRate, kStopBits)};
  app.name("lmprng");
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* g = app.add_subcommand("generate", "Generate a PRNG output stream");
  auto* seed_opt = g->add_option("--seed", gen.seed, "Raw 16-bit seed (0 is sanitized to 1)")->check(CLI::Range(0, 65535));
  g->add_option("--seed-file", gen.seed_file, "Read the seed from the first line of a file")->excludes(seed_opt);
  g->add_option("--n", gen.n, "Number of outputs")->required();
  g->add_option("--semantics", gen.semantics, "hw (bit-exact fixed point) or poc (double-precision reference)")
      ->transform(CLI::CheckedTransformer(kSemantics));
  g->add_option("--zero-policy", gen.zero_policy, "faithful or perturb (reset a 0 map state to 1)")
      ->transform(CLI::CheckedTransformer(kZeroPolicy));
  g->add_option("--format", gen.format, "csv (one value per line) or frames (raw wire bytes)")
      ->check(CLI::IsMember({"csv", "frames"}));
  g->add_option("--weights", gen.weights, "EWMA weights old,new,denom (hw only)");
  g->add_option("--out", gen.out, "Output path, - for stdout");
  g->add_option("--manifest", gen.manifest, "Manifest path (default <out>.manifest.json)");

  AnalyzeFlags an;
  auto* a = app.add_subcommand("analyze", "Histogram, moments, normal fit and chi-square of a value stream");
  a->add_option("--input", an.input, "Value CSV or frame dump, - for stdin")->required();
  a->add_flag("--frames", an.frames, "Input is a raw frame dump");
  a->add_flag("--dedupe", an.dedupe, "Drop consecutive duplicates after decoding frames");
  a->add_flag("--no-paper-compat", an.no_paper_compat, "Keep a leading 0 when deduplicating");
  a->add_flag("--zero-prefix", an.zero_prefix, "Prepend 256 zeros like the original receiver log");
  a->add_option("--bins", an.bins, "Histogram bins");
  a->add_option("--range", an.range, "Histogram range lo..hi");
  a->add_option("--points", an.points, "Overlay curve points");
  a->add_option("--out-prefix", an.out_prefix, "Output file prefix, - for stdout");

  CensusFlags ce;
  auto* c = app.add_subcommand("census", "Cycle structure of the fixed-point map over all 65536 seeds");
  c->add_option("--r", ce.r, "Map parameter, integer in [1, 4]");
  c->add_option("--workers", ce.workers, "Worker threads");
  c->add_option("--out", ce.out, "Output path, - for stdout");

  CompareFlags cmp;
  auto* cm = app.add_subcommand("compare", "Step-by-step divergence between two semantics");
  cm->add_option("--seed", cmp.seed, "Raw 16-bit seed")->required()->check(CLI::Range(0, 65535));
  cm->add_option("--n", cmp.n, "Number of steps")->required();
  cm->add_option("--threshold", cmp.threshold, "Divergence threshold");
  cm->add_option("--a", cmp.a, "First semantics")->transform(CLI::CheckedTransformer(kSemantics));
  cm->add_option("--b", cmp.b, "Second semantics")->transform(CLI::CheckedTransformer(kSemantics));
  cm->add_option("--out", cmp.out, "Output path, - for stdout (summary goes to stderr)");

  CodecFlags enc;
  auto* e = app.add_subcommand("encode", "Value CSV to wire frames");
  e->add_option("--input", enc.input, "Value CSV, - for stdin");
  e->add_option("--out", enc.out, "Frame dump path, - for stdout");

  CodecFlags dec;
  auto* d = app.add_subcommand("decode", "Wire frames to value CSV");
  d->add_option("--input", dec.input, "Frame dump, - for stdin");
  d->add_option("--out", dec.out, "Value CSV path, - for stdout");
  d->add_flag("--dedupe", dec.dedupe, "Drop consecutive duplicates");
  d->add_flag("--no-paper-compat", dec.no_paper_compat, "Keep a leading 0 when deduplicating");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kUsage;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out, err);
    if (a->parsed()) return cmd_analyze(an, out, err);
    if (c->parsed()) return cmd_census(ce, out, err);
    if (cm->parsed()) return cmd_compare(cmp, out, err);
    if (e->parsed()) return cmd_encode(enc, out);
    if (d->parsed()) return cmd_decode(dec, out);
  } catch (const FramingError& ex) {
    err << "error: " << ex.what() << '\n';
    return kFraming;
  } catch (const ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kParse;
  } catch (const EmptyInput& ex) {
    err << "error: " << ex.what() << '\n';
    return kParse;
  } catch (const IoError& ex) {
    err << "error: " << ex.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace lmprng::cli
