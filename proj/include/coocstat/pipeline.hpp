#pragma once

// End-to-end orchestration: lexicon extraction, unrelated sampling,
// counting, metrics and reporting, plus the reproducibility manifest.

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coocstat/analysis_report.hpp"
#include "coocstat/assoc_metrics.hpp"
#include "coocstat/cooccurrence_index.hpp"
#include "coocstat/corpus_io.hpp"
#include "coocstat/relation_lexicon.hpp"
#include "coocstat/tsv.hpp"
#include "coocstat/types.hpp"

namespace coocstat {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::int64_t kDefaultUnrelatedSample = 10000;

namespace fs = std::filesystem;

/// A stage failed; `stage()` names it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error("stage '" + stage + "' failed: " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

// ---------------------------------------------------------------------------
// Checksums

inline std::string sha256_file(const fs::path& path) {
  auto in = tsv::open_in(path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256: init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 15];
  }
  return hex;
}

// ---------------------------------------------------------------------------
// Configuration

struct ReportOptions {
  std::set<int> tables{1, 2, 3, 4, 5, 6};
  std::set<report::Figure> figures{report::Figure::G2, report::Figure::Order, report::Figure::Distance,
                                   report::Figure::AsymmetricOrder};
  report::Population population = report::Population::All;
  report::DistanceAverage distance = report::DistanceAverage::PerPair;
  double alpha = stats::kDefaultAlpha;
  bool svg = true;
};

struct RunConfig {
  std::string corpus;
  std::string lexicon;
  std::string derivations;   // optional
  std::string lemmas;        // optional vocabulary file for unrelated candidates
  std::string verb_classes;  // optional; built-in list when empty
  std::size_t min_len = kDefaultMinSentenceLength;
  double alpha = stats::kDefaultAlpha;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t unr_n = kDefaultUnrelatedSample;
  std::size_t shards = 1;
  std::size_t threads = 1;  // not echoed: results do not depend on it
  std::string out_dir;
  report::Population population = report::Population::All;
  report::DistanceAverage distance = report::DistanceAverage::PerPair;
  bool svg = true;

  void validate() const {
    if (corpus.empty()) throw ArgumentError("--corpus is required");
    if (lexicon.empty()) throw ArgumentError("--lexicon is required");
    if (out_dir.empty()) throw ArgumentError("--out is required");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("--alpha must lie in (0, 1)");
    if (min_len < 1) throw ArgumentError("--min-sentence-len must be >= 1");
    if (unr_n <= 0) throw ArgumentError("--unr-n must be positive");
    if (shards < 1) throw ArgumentError("--shards must be >= 1");
  }
};

inline std::string_view to_string(report::Population p) { return p == report::Population::All ? "all" : "sig"; }
inline std::string_view to_string(report::DistanceAverage d) {
  return d == report::DistanceAverage::PerPair ? "pair" : "pooled";
}

inline report::Population parse_population(std::string_view s) {
  if (s == "all") return report::Population::All;
  if (s == "sig") return report::Population::Significant;
  throw ArgumentError("population must be 'all' or 'sig'");
}

inline report::DistanceAverage parse_distance_average(std::string_view s) {
  if (s == "pair") return report::DistanceAverage::PerPair;
  if (s == "pooled") return report::DistanceAverage::Pooled;
  throw ArgumentError("distance average must be 'pair' or 'pooled'");
}

/// Worker threads: COOCSTAT_THREADS when set to a positive integer, else `fallback`.
inline std::size_t threads_from_env(std::size_t fallback) {
  if (const char* v = std::getenv("COOCSTAT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return fallback;
}

inline nlohmann::json config_to_json(const RunConfig& c) {
  return {{"corpus", c.corpus},
          {"lexicon", c.lexicon},
          {"derivations", c.derivations},
          {"lemmas", c.lemmas},
          {"verb_classes", c.verb_classes},
          {"min_sentence_len", c.min_len},
          {"alpha", c.alpha},
          {"seed", c.seed},
          {"unr_n", c.unr_n},
          {"shards", c.shards},
          {"out_dir", c.out_dir},
          {"avg_population", std::string(to_string(c.population))},
          {"distance_average", std::string(to_string(c.distance))},
          {"svg", c.svg}};
}

inline RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.corpus = j.at("corpus").get<std::string>();
  c.lexicon = j.at("lexicon").get<std::string>();
  c.derivations = j.value("derivations", "");
  c.lemmas = j.value("lemmas", "");
  c.verb_classes = j.value("verb_classes", "");
  c.min_len = j.value("min_sentence_len", kDefaultMinSentenceLength);
  c.alpha = j.value("alpha", stats::kDefaultAlpha);
  c.seed = j.value("seed", kDefaultSeed);
  c.unr_n = j.value("unr_n", kDefaultUnrelatedSample);
  c.shards = j.value("shards", std::size_t{1});
  c.out_dir = j.value("out_dir", "");
  c.population = parse_population(j.value("avg_population", "all"));
  c.distance = parse_distance_average(j.value("distance_average", "pair"));
  c.svg = j.value("svg", true);
  return c;
}

// ---------------------------------------------------------------------------
// Stages

inline void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  auto out = tsv::open_out(path.string());
  body(out);
  if (!out) throw Error("write failed: " + path.string());
}

inline VerbClasses resolve_verb_classes(const std::string& path) {
  return path.empty() ? default_verb_classes() : load_verb_classes(path);
}

/// Lemmas that may form unrelated candidates (lemma-level exclusion rules).
inline std::unordered_set<LemmaKey, LemmaKeyHash> eligible_lemmas(const std::vector<LexiconEntry>& lexicon,
                                                                  const std::string& lemma_file,
                                                                  const VerbClasses& classes) {
  LemmaInfoTable info;
  add_lemma_info(info, lexicon);
  if (!lemma_file.empty()) {
    auto in = tsv::open_in(lemma_file);
    read_lemma_info(in, info);
  }
  apply_verb_classes(info, classes);
  std::unordered_set<LemmaKey, LemmaKeyHash> out;
  for (const auto& [k, i] : info)
    if (lemma_eligible(k, i)) out.insert(k);
  return out;
}

struct ExtractResult {
  FilterReport filter;
  OrientResult oriented;
  std::vector<DerivedPair> derived;
};

/// Loads, flags, filters and orients lexicon pairs; optionally resolves
/// derivations among the resulting pairs.
inline ExtractResult extract_pairs(const std::vector<LexiconEntry>& lexicon, const VerbClasses& classes,
                                   const LemmaFreqs& freqs, const std::vector<DerivationLink>* links) {
  auto entries = lexicon;
  apply_verb_classes(entries, classes);
  auto filtered = filter_pairs(entries);
  ExtractResult r{filtered.report, orient_pairs(filtered.kept, freqs), {}};
  if (links) r.derived = derived_pairs(r.oriented.pairs, *links, r.oriented.pairs);
  return r;
}

inline void write_extract_outputs(const ExtractResult& r, const fs::path& pairs_out, const fs::path& report_out,
                                  const std::optional<fs::path>& derived_out) {
  write_file(pairs_out, [&](std::ostream& o) { write_pairs(o, r.oriented.pairs); });
  write_file(report_out, [&](std::ostream& o) {
    write_filter_report(o, r.filter);
    o << "unobserved\t\t" << r.oriented.dropped_unobserved << '\n'
      << "duplicates\t\t" << r.oriented.duplicates << '\n'
      << "oriented\t\t" << r.oriented.pairs.size() << '\n';
  });
  if (derived_out) write_file(*derived_out, [&](std::ostream& o) { write_derived_pairs(o, r.derived); });
}

/// Writes every report artefact selected in `opts` into `dir`.
inline void write_report(const std::vector<PairStats>& stats, const std::vector<DerivedPair>* derived,
                         const fs::path& dir, const ReportOptions& opts) {
  fs::create_directories(dir);
  const auto rows = report::summarize(stats);
  const auto cmp = report::compare_relations(stats, opts.alpha, opts.population);
  auto table = [&](int n, const std::function<void(std::ostream&, std::ostream&)>& body) {
    if (!opts.tables.contains(n)) return;
    const auto base = "table" + std::to_string(n);
    auto md = tsv::open_out((dir / (base + ".md")).string());
    auto csv = tsv::open_out((dir / (base + ".csv")).string());
    body(md, csv);
  };
  table(1, [&](auto& md, auto& csv) { report::write_table1(md, csv, rows); });
  table(2, [&](auto& md, auto& csv) { report::write_table2(md, csv, rows, cmp, opts.population); });
  table(3, [&](auto& md, auto& csv) { report::write_table3(md, csv, rows, cmp); });
  table(4, [&](auto& md, auto& csv) { report::write_table4(md, csv, rows, cmp, opts.distance); });
  table(5, [&](auto& md, auto& csv) {
    std::vector<DerivedPair> none;
    report::write_table5(md, csv, report::derivation_persistence(derived ? *derived : none, stats));
  });
  table(6, [&](auto& md, auto& csv) { report::write_table6(md, csv, report::associated_counts(stats)); });
  write_file(dir / "comparisons.csv", [&](std::ostream& o) { report::write_comparisons(o, cmp); });

  for (auto fig : opts.figures) {
    const auto ds = report::distributions(stats, fig, opts.population);
    const auto base = "fig_" + std::string(report::to_string(fig));
    auto summary = tsv::open_out((dir / (base + ".csv")).string());
    auto raw = tsv::open_out((dir / (base + "_values.csv")).string());
    report::write_distribution_csv(summary, raw, ds);
    if (opts.svg) {
      const bool log_scale = fig == report::Figure::G2 || fig == report::Figure::Distance;
      write_file(dir / (base + ".svg"), [&](std::ostream& o) {
        report::write_boxplot_svg(o, ds, base, log_scale);
      });
    }
  }
}

// ---------------------------------------------------------------------------
// Orchestration

inline constexpr std::string_view kStaleMarker = "STALE";

inline std::vector<std::string> list_outputs(const fs::path& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    auto rel = fs::relative(e.path(), dir).generic_string();
    if (rel == "manifest.json" || rel == kStaleMarker) continue;
    out.push_back(rel);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline nlohmann::json build_manifest(const RunConfig& c) {
  nlohmann::json inputs = nlohmann::json::object();
  auto add_input = [&](const char* role, const std::string& path) {
    if (!path.empty()) inputs[role] = {{"path", path}, {"sha256", sha256_file(path)}};
  };
  add_input("corpus", c.corpus);
  add_input("lexicon", c.lexicon);
  add_input("derivations", c.derivations);
  add_input("lemmas", c.lemmas);
  add_input("verb_classes", c.verb_classes);
  nlohmann::json outputs = nlohmann::json::object();
  for (const auto& rel : list_outputs(c.out_dir)) outputs[rel] = sha256_file(fs::path(c.out_dir) / rel);
  return {{"tool", "coocstat"}, {"version", std::string(kVersion)}, {"config", config_to_json(c)},
          {"inputs", inputs},   {"outputs", outputs}};
}

struct PipelineSummary {
  std::uint64_t sentences = 0;
  FilterReport filter;
  std::size_t related_pairs = 0;
  std::size_t unrelated_pairs = 0;
  std::size_t derived_pairs = 0;
  std::size_t observed_pairs = 0;
};

/// extract-pairs -> sample-unrelated -> count -> metrics -> report, then the
/// manifest. A STALE marker in the output directory names the failing stage
/// and is removed only after a complete run.
inline PipelineSummary run_pipeline(const RunConfig& c) {
  c.validate();
  const fs::path out(c.out_dir);
  fs::create_directories(out);
  const auto marker = out / kStaleMarker;
  std::string stage;
  auto mark = [&](const std::string& s) {
    stage = s;
    write_file(marker, [&](std::ostream& o) { o << "incomplete run; last stage started: " << s << '\n'; });
  };

  PipelineSummary summary;
  try {
    mark("extract-pairs");
    const auto lexicon = load_lexicon(c.lexicon);
    const auto classes = resolve_verb_classes(c.verb_classes);
    std::optional<std::vector<DerivationLink>> links;
    if (!c.derivations.empty()) links = load_derivations(c.derivations);
    const auto eligible = eligible_lemmas(lexicon, c.lemmas, classes);
    const auto scan = scan_corpus(c.corpus, c.min_len, &eligible, c.shards, c.threads);
    const auto freqs = scan.freqs();
    summary.sentences = scan.sentences();
    write_file(out / "lemma_freqs.tsv", [&](std::ostream& o) { write_lemma_freqs(o, freqs); });
    const auto extracted = extract_pairs(lexicon, classes, freqs, links ? &*links : nullptr);
    write_extract_outputs(extracted, out / "pairs_related.tsv", out / "filter_report.tsv",
                          links ? std::optional(out / "derived_pairs.tsv") : std::nullopt);
    summary.filter = extracted.filter;
    summary.related_pairs = extracted.oriented.pairs.size();
    summary.derived_pairs = extracted.derived.size();

    mark("sample-unrelated");
    const auto unrelated = sample_unrelated(scan.cooccurring_pairs(), related_set(lexicon), c.unr_n, c.seed, freqs);
    write_file(out / "pairs_unrelated.tsv", [&](std::ostream& o) { write_pairs(o, unrelated); });
    summary.unrelated_pairs = unrelated.size();

    mark("count");
    std::vector<LemmaPair> all_pairs = extracted.oriented.pairs;
    all_pairs.insert(all_pairs.end(), unrelated.begin(), unrelated.end());
    std::sort(all_pairs.begin(), all_pairs.end());
    if (all_pairs.empty()) throw Error("no pairs to count");
    const auto observations = count_corpus(c.corpus, c.min_len, all_pairs, c.shards, c.threads);
    write_observations(out / "counts", observations);

    mark("metrics");
    const auto stats = compute_all_stats(observations, c.alpha);
    write_file(out / "stats.tsv", [&](std::ostream& o) { write_stats(o, stats); });
    summary.observed_pairs = stats.size();

    mark("report");
    ReportOptions ro;
    ro.alpha = c.alpha;
    ro.population = c.population;
    ro.distance = c.distance;
    ro.svg = c.svg;
    write_report(stats, links ? &extracted.derived : nullptr, out / "report", ro);

    mark("manifest");
    const auto manifest = build_manifest(c);
    write_file(out / "manifest.json", [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
  fs::remove(marker);
  return summary;
}

inline RunConfig load_manifest_config(const std::string& path) {
  auto in = tsv::open_in(path);
  const auto j = nlohmann::json::parse(in);
  return config_from_json(j.at("config"));
}

/// Output checksums recorded in a manifest (relative path -> sha256).
inline std::map<std::string, std::string> manifest_outputs(const std::string& manifest_path) {
  auto in = tsv::open_in(manifest_path);
  const auto j = nlohmann::json::parse(in);
  std::map<std::string, std::string> out;
  for (const auto& [rel, digest] : j.at("outputs").items()) out[rel] = digest.get<std::string>();
  return out;
}

/// Files whose checksum differs from (or which are missing relative to) `expected`.
inline std::vector<std::string> verify_outputs(const std::map<std::string, std::string>& expected,
                                               const std::string& out_dir) {
  std::vector<std::string> mismatched;
  for (const auto& [rel, digest] : expected) {
    const auto p = fs::path(out_dir) / rel;
    if (!fs::exists(p) || sha256_file(p) != digest) mismatched.push_back(rel);
  }
  return mismatched;
}

}  // namespace coocstat
