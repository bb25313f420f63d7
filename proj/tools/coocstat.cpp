// coocstat: command-line front end for the co-occurrence pipeline.
//
// Exit codes: 0 success, 1 stage / runtime failure, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "coocstat/pipeline.hpp"

namespace {

using namespace coocstat;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::set<int> parse_tables(const std::string& spec) {
  std::set<int> out;
  for (auto f : tsv::split(spec, ',')) {
    int n = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), n);
    if (ec != std::errc{} || ptr != f.data() + f.size() || n < 1 || n > 6)
      throw ArgumentError("--tables: expected numbers 1-6, got '" + std::string(f) + "'");
    out.insert(n);
  }
  return out;
}

std::set<report::Figure> parse_figures(const std::string& spec) {
  std::set<report::Figure> out;
  for (auto f : tsv::split(spec, ',')) {
    bool found = false;
    for (auto fig : report::kFigures)
      if (report::to_string(fig) == f) {
        out.insert(fig);
        found = true;
      }
    if (!found) throw ArgumentError("--figures: unknown figure '" + std::string(f) + "'");
  }
  return out;
}

std::size_t worker_threads(std::size_t shards) { return threads_from_env(shards); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentence-level co-occurrence statistics for semantically related word pairs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::size_t min_len = kDefaultMinSentenceLength;
  std::size_t shards = 1;
  double alpha = stats::kDefaultAlpha;

  // lemma-freqs
  auto* freqs_cmd = app.add_subcommand("lemma-freqs", "Count sentence frequencies of every content lemma");
  std::string lf_corpus, lf_out;
  freqs_cmd->add_option("--corpus", lf_corpus, "Vertical corpus file")->required()->check(CLI::ExistingFile);
  freqs_cmd->add_option("--out", lf_out, "Output TSV (lemma, pos, sentences)")->required();
  freqs_cmd->add_option("--min-sentence-len", min_len, "Minimum non-punctuation tokens per sentence")
      ->check(CLI::PositiveNumber);
  freqs_cmd->add_option("--shards", shards, "Corpus shards")->check(CLI::PositiveNumber);

  // extract-pairs
  auto* extract_cmd = app.add_subcommand("extract-pairs", "Filter lexicon pairs and orient them by corpus frequency");
  std::string ex_lexicon, ex_freqs, ex_corpus, ex_out, ex_verbs, ex_derivations, ex_derived_out, ex_report;
  extract_cmd->add_option("--lexicon", ex_lexicon, "Lexicon pair TSV")->required()->check(CLI::ExistingFile);
  auto* freq_opt =
      extract_cmd->add_option("--corpus-freqs", ex_freqs, "Lemma frequency TSV")->check(CLI::ExistingFile);
  auto* corpus_opt = extract_cmd->add_option("--corpus", ex_corpus, "Corpus to compute frequencies from instead")
                         ->check(CLI::ExistingFile);
  freq_opt->excludes(corpus_opt);
  extract_cmd->add_option("--out", ex_out, "Oriented pair TSV")->required();
  extract_cmd->add_option("--verb-classes", ex_verbs, "Linking/auxiliary/light verb list (default: built in)")
      ->check(CLI::ExistingFile);
  extract_cmd->add_option("--derivations", ex_derivations, "Derivation link TSV")->check(CLI::ExistingFile);
  extract_cmd->add_option("--derived-out", ex_derived_out, "Derived pair TSV (requires --derivations)");
  extract_cmd->add_option("--filter-report", ex_report, "Per-rule exclusion counts");
  extract_cmd->add_option("--min-sentence-len", min_len, "Minimum non-punctuation tokens per sentence")
      ->check(CLI::PositiveNumber);

  // sample-unrelated
  auto* sample_cmd = app.add_subcommand("sample-unrelated", "Sample co-occurring pairs the lexicon does not relate");
  std::string su_corpus, su_lexicon, su_lemmas, su_verbs, su_out;
  std::int64_t su_n = kDefaultUnrelatedSample;
  std::uint64_t seed = kDefaultSeed;
  sample_cmd->add_option("--corpus", su_corpus, "Vertical corpus file")->required()->check(CLI::ExistingFile);
  sample_cmd->add_option("--lexicon", su_lexicon, "Lexicon pair TSV")->required()->check(CLI::ExistingFile);
  sample_cmd->add_option("--lemmas", su_lemmas, "Extra vocabulary TSV (lemma, pos, wn_freq, flags)")
      ->check(CLI::ExistingFile);
  sample_cmd->add_option("--verb-classes", su_verbs, "Linking/auxiliary/light verb list (default: built in)")
      ->check(CLI::ExistingFile);
  sample_cmd->add_option("--n", su_n, "Sample size");
  sample_cmd->add_option("--seed", seed, "Random seed");
  sample_cmd->add_option("--out", su_out, "Pair TSV")->required();
  sample_cmd->add_option("--min-sentence-len", min_len, "Minimum non-punctuation tokens per sentence")
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--shards", shards, "Corpus shards")->check(CLI::PositiveNumber);

  // count
  auto* count_cmd = app.add_subcommand("count", "Count sentence-level co-occurrence for a pair list");
  std::string ct_corpus, ct_out;
  std::vector<std::string> ct_pairs;
  count_cmd->add_option("--corpus", ct_corpus, "Vertical corpus file")->required()->check(CLI::ExistingFile);
  count_cmd->add_option("--pairs", ct_pairs, "Pair TSV (repeatable)")->required()->check(CLI::ExistingFile);
  count_cmd->add_option("--out", ct_out, "Output directory")->required();
  count_cmd->add_option("--shards", shards, "Corpus shards")->check(CLI::PositiveNumber);
  count_cmd->add_option("--min-sentence-len", min_len, "Minimum non-punctuation tokens per sentence")
      ->check(CLI::PositiveNumber);

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "Per-pair G2, order and distance statistics");
  std::string mt_counts, mt_out;
  metrics_cmd->add_option("--counts", mt_counts, "Directory written by 'count'")->required()
      ->check(CLI::ExistingDirectory);
  metrics_cmd->add_option("--out", mt_out, "Per-pair stats TSV")->required();
  metrics_cmd->add_option("--alpha", alpha, "Significance level");

  // report
  auto* report_cmd = app.add_subcommand("report", "Relation tables, comparisons and figure data");
  std::string rp_stats, rp_out, rp_tables = "1,2,3,4,5,6", rp_figures = "g2,order,distance,asym_order",
                                rp_population = "all", rp_distance = "pair", rp_derived;
  bool no_svg = false;
  report_cmd->add_option("--stats", rp_stats, "Per-pair stats TSV")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--out", rp_out, "Output directory")->required();
  report_cmd->add_option("--tables", rp_tables, "Comma-separated table numbers");
  report_cmd->add_option("--figures", rp_figures, "Comma-separated: g2, order, distance, asym_order");
  report_cmd->add_option("--avg-population", rp_population, "Strength average over all|sig pairs");
  report_cmd->add_option("--distance-avg", rp_distance, "Distance average: pair|pooled");
  report_cmd->add_option("--derived", rp_derived, "Derived pair TSV for table 5")->check(CLI::ExistingFile);
  report_cmd->add_option("--alpha", alpha, "Significance level for comparisons");
  report_cmd->add_flag("--no-svg", no_svg, "Skip SVG box plots");

  // all
  auto* all_cmd = app.add_subcommand("all", "Run every stage and write a manifest");
  RunConfig cfg;
  std::string manifest;
  bool verify = false;
  std::string al_population = "all", al_distance = "pair";
  all_cmd->add_option("--corpus", cfg.corpus, "Vertical corpus file")->check(CLI::ExistingFile);
  all_cmd->add_option("--lexicon", cfg.lexicon, "Lexicon pair TSV")->check(CLI::ExistingFile);
  all_cmd->add_option("--derivations", cfg.derivations, "Derivation link TSV")->check(CLI::ExistingFile);
  all_cmd->add_option("--lemmas", cfg.lemmas, "Extra vocabulary TSV")->check(CLI::ExistingFile);
  all_cmd->add_option("--verb-classes", cfg.verb_classes, "Verb class list")->check(CLI::ExistingFile);
  all_cmd->add_option("--out", cfg.out_dir, "Output directory");
  all_cmd->add_option("--min-sentence-len", cfg.min_len, "Minimum non-punctuation tokens per sentence")
      ->check(CLI::PositiveNumber);
  all_cmd->add_option("--alpha", cfg.alpha, "Significance level");
  all_cmd->add_option("--seed", cfg.seed, "Random seed for the unrelated sample");
  all_cmd->add_option("--unr-n", cfg.unr_n, "Unrelated sample size");
  all_cmd->add_option("--shards", cfg.shards, "Corpus shards")->check(CLI::PositiveNumber);
  all_cmd->add_option("--avg-population", al_population, "Strength average over all|sig pairs");
  all_cmd->add_option("--distance-avg", al_distance, "Distance average: pair|pooled");
  all_cmd->add_flag("--no-svg", no_svg, "Skip SVG box plots");
  all_cmd->add_option("--manifest", manifest, "Re-run the configuration recorded in a manifest")
      ->check(CLI::ExistingFile);
  all_cmd->add_flag("--verify", verify, "With --manifest: compare outputs against recorded checksums");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*freqs_cmd) {
      const auto scan = scan_corpus(lf_corpus, min_len, nullptr, shards, worker_threads(shards));
      write_file(lf_out, [&](std::ostream& o) { write_lemma_freqs(o, scan.freqs()); });
      std::cerr << "sentences: " << scan.sentences() << '\n';
    } else if (*extract_cmd) {
      if (ex_freqs.empty() && ex_corpus.empty())
        throw ArgumentError("extract-pairs: one of --corpus-freqs or --corpus is required");
      if (!ex_derived_out.empty() && ex_derivations.empty())
        throw ArgumentError("--derived-out requires --derivations");
      LemmaFreqs freqs;
      if (!ex_freqs.empty()) {
        auto in = tsv::open_in(ex_freqs);
        freqs = read_lemma_freqs(in);
      } else {
        freqs = scan_corpus(ex_corpus, min_len).freqs();
      }
      std::optional<std::vector<DerivationLink>> links;
      if (!ex_derivations.empty()) links = load_derivations(ex_derivations);
      const auto r = extract_pairs(load_lexicon(ex_lexicon), resolve_verb_classes(ex_verbs), freqs,
                                   links ? &*links : nullptr);
      const auto report_path = ex_report.empty() ? fs::path(ex_out).string() + ".filter.tsv" : ex_report;
      std::optional<fs::path> derived_out;
      if (links) derived_out = ex_derived_out.empty() ? fs::path(ex_out).string() + ".derived.tsv" : ex_derived_out;
      write_extract_outputs(r, ex_out, report_path, derived_out);
      std::cerr << "kept " << r.filter.kept << " of " << r.filter.input << " entries; " << r.oriented.pairs.size()
                << " observed pairs\n";
    } else if (*sample_cmd) {
      const auto lexicon = load_lexicon(su_lexicon);
      const auto eligible = eligible_lemmas(lexicon, su_lemmas, resolve_verb_classes(su_verbs));
      const auto scan = scan_corpus(su_corpus, min_len, &eligible, shards, worker_threads(shards));
      const auto pairs = sample_unrelated(scan.cooccurring_pairs(), related_set(lexicon), su_n, seed, scan.freqs());
      write_file(su_out, [&](std::ostream& o) { write_pairs(o, pairs); });
      std::cerr << "sampled " << pairs.size() << " unrelated pairs\n";
    } else if (*count_cmd) {
      std::vector<LemmaPair> pairs;
      for (const auto& p : ct_pairs) {
        auto more = load_pairs(p);
        pairs.insert(pairs.end(), more.begin(), more.end());
      }
      std::sort(pairs.begin(), pairs.end());
      pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
      const auto obs = count_corpus(ct_corpus, min_len, pairs, shards, worker_threads(shards));
      write_observations(ct_out, obs);
      std::cerr << "counted " << pairs.size() << " pairs over " << obs.n << " sentences\n";
    } else if (*metrics_cmd) {
      if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("--alpha must lie in (0, 1)");
      const auto stats = compute_all_stats(read_observations(mt_counts), alpha);
      write_file(mt_out, [&](std::ostream& o) { write_stats(o, stats); });
    } else if (*report_cmd) {
      if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("--alpha must lie in (0, 1)");
      ReportOptions ro;
      ro.tables = parse_tables(rp_tables);
      ro.figures = parse_figures(rp_figures);
      ro.population = parse_population(rp_population);
      ro.distance = parse_distance_average(rp_distance);
      ro.alpha = alpha;
      ro.svg = !no_svg;
      std::optional<std::vector<DerivedPair>> derived;
      if (!rp_derived.empty()) {
        auto in = tsv::open_in(rp_derived);
        derived = read_derived_pairs(in);
      }
      write_report(load_stats(rp_stats), derived ? &*derived : nullptr, rp_out, ro);
    } else if (*all_cmd) {
      std::map<std::string, std::string> expected;
      if (verify && manifest.empty()) throw ArgumentError("--verify requires --manifest");
      if (!manifest.empty()) {
        const auto out_override = cfg.out_dir;
        cfg = load_manifest_config(manifest);
        expected = manifest_outputs(manifest);
        if (!out_override.empty()) cfg.out_dir = out_override;
      } else {
        cfg.population = parse_population(al_population);
        cfg.distance = parse_distance_average(al_distance);
        cfg.svg = !no_svg;
      }
      cfg.threads = worker_threads(cfg.shards);
      cfg.validate();
      const auto s = run_pipeline(cfg);
      std::cerr << "sentences " << s.sentences << ", related pairs " << s.related_pairs << ", unrelated pairs "
                << s.unrelated_pairs << ", observed " << s.observed_pairs << "\n";
      if (verify) {
        const auto bad = verify_outputs(expected, cfg.out_dir);
        for (const auto& f : bad) std::cerr << "mismatch: " << f << '\n';
        if (!bad.empty()) return kExitFailure;
        std::cerr << "all outputs match the manifest\n";
      }
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
