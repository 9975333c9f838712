// emojimap: cross-platform emoji embedding, mapping, and evaluation pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "emojimap/analysis.hpp"
#include "emojimap/corpus.hpp"
#include "emojimap/embedding.hpp"
#include "emojimap/error.hpp"
#include "emojimap/eval.hpp"
#include "emojimap/mapping.hpp"
#include "emojimap/sentiment.hpp"
#include "emojimap/stats.hpp"
#include "emojimap/synth.hpp"
#include "emojimap/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace emojimap;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  bool deterministic = false;
  int workers = 1;
  std::string inventory_path;
  std::string stopword_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_flag("--deterministic", opts.deterministic,
                "single-threaded bit-reproducible mode");
  cmd->add_option("--workers", opts.workers, "worker threads (ignored when deterministic)");
  cmd->add_option("--inventory", opts.inventory_path, "emoji inventory file");
  cmd->add_option("--stopwords", opts.stopword_path, "stopword list file");
}

EmojiInventory load_inventory(const CommonOpts& opts) {
  return opts.inventory_path.empty() ? EmojiInventory::defaults()
                                     : EmojiInventory::load(opts.inventory_path);
}

TokenizeConfig load_tokenize_config(const CommonOpts& opts) {
  TokenizeConfig cfg;
  if (!opts.stopword_path.empty()) cfg.stopwords = StopwordList::load(opts.stopword_path);
  return cfg;
}

// Run manifest: enough to replay the run bit-exactly in deterministic mode.
void write_manifest(const CLI::App& cmd, const CommonOpts& opts) {
  json m;
  m["subcommand"] = cmd.get_name();
  m["version"] = kVersion;
  m["seed"] = opts.seed;
  m["deterministic"] = opts.deterministic;
  json cfg;
  std::ostringstream flat;
  for (const auto* opt : cmd.get_options()) {
    if (opt->get_name() == "--help") continue;
    std::string value = opt->count() ? opt->results().front() : opt->get_default_str();
    cfg[opt->get_name()] = value;
    flat << opt->get_name() << '=' << value << ';';
  }
  m["config"] = cfg;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash64(flat.str())));
  m["config_hash"] = buf;
  fs::create_directories(opts.out_dir);
  std::ofstream out(fs::path(opts.out_dir) / ("manifest_" + cmd.get_name() + ".json"));
  out << m.dump(2) << '\n';
}

std::vector<TokenSeq> load_tokenized(const std::string& path, Platform platform,
                                     const TokenizeConfig& tok,
                                     const EmojiInventory& inv) {
  auto corpus = read_corpus_jsonl(path, platform, SourceTable::defaults());
  return tokenize_corpus(corpus, tok, inv);
}

Platform require_platform(const std::string& name) {
  auto p = platform_from_name(name);
  if (!p) throw Error(Errc::SpecInvalid, "unknown platform: " + name);
  return *p;
}

Scorer make_lexicon_scorer(const std::string& lexicon_path,
                           const std::string& negator_path,
                           std::shared_ptr<Lexicon>& holder) {
  holder = std::make_shared<Lexicon>(load_lexicon(lexicon_path));
  if (!negator_path.empty()) load_negators(*holder, negator_path);
  auto lex = holder;
  return [lex](const TokenSeq& seq) { return score(seq, *lex); };
}

void write_report_files(const std::vector<SweepOutcome>& outcomes,
                        const fs::path& out_dir, const std::string& stem) {
  json j = json::array();
  std::ofstream csv(out_dir / (stem + ".csv"));
  csv << "source,target,threshold,mode,fold,accuracy,f1\n";
  for (const auto& oc : outcomes) {
    json jo;
    jo["threshold"] = oc.threshold;
    jo["ok"] = oc.ok;
    if (!oc.ok) {
      jo["error"] = oc.error;
      j.push_back(jo);
      continue;
    }
    const auto& r = oc.report;
    jo["source"] = platform_name(r.source);
    jo["target"] = platform_name(r.target);
    jo["a1"] = r.a1;
    jo["a2"] = r.a2;
    jo["delta"] = r.delta;
    jo["no_emoji_accuracy"] = r.no_emoji_accuracy;
    jo["labeled"] = r.labeled;
    jo["skipped_no_known_words"] = r.skipped_no_known_words;
    json folds = json::object();
    for (const auto& [mode, metrics] : r.fold_metrics) {
      json arr = json::array();
      for (const auto& f : metrics) {
        arr.push_back({{"fold", f.fold},
                       {"accuracy", f.accuracy},
                       {"f1", f.f1_positive}});
        csv << platform_name(r.source) << ',' << platform_name(r.target) << ','
            << r.threshold << ',' << repr_mode_name(mode) << ',' << f.fold << ','
            << f.accuracy << ',' << f.f1_positive << '\n';
      }
      folds[repr_mode_name(mode)] = arr;
    }
    jo["folds"] = folds;
    j.push_back(jo);
  }
  std::ofstream jf(out_dir / (stem + ".json"));
  jf << j.dump(2) << '\n';
}

TrainConfig make_train_config(const CommonOpts& common, int dim, int window,
                              int negatives, int epochs, int min_count,
                              int emoji_min_count) {
  TrainConfig cfg;
  cfg.dim = dim;
  cfg.window = window;
  cfg.negatives = negatives;
  cfg.epochs = epochs;
  cfg.min_count = min_count;
  cfg.emoji_min_count = emoji_min_count;
  cfg.seed = common.seed;
  cfg.deterministic = common.deterministic;
  cfg.workers = common.workers;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cross-platform emoji embedding, mapping and evaluation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "configuration file (defaults < config < flags)");

  // ---- ingest ----
  auto* ingest = app.add_subcommand("ingest", "partition a JSONL stream by platform");
  CommonOpts ingest_opts;
  std::string ingest_input, ingest_sources;
  bool ingest_dedupe = false;
  ingest->add_option("--input", ingest_input, "raw JSONL file")->required();
  ingest->add_option("--sources", ingest_sources, "source->platform table (TSV)");
  ingest->add_flag("--dedupe-by-id", ingest_dedupe, "drop duplicate tweet ids");
  add_common(ingest, ingest_opts);

  // ---- synth ----
  auto* synth = app.add_subcommand("synth", "generate a planted synthetic corpus");
  CommonOpts synth_opts;
  std::string synth_spec_path, synth_partition;
  synth->add_option("--spec", synth_spec_path, "SynthSpec JSON file")->required();
  synth->add_option("--partition", synth_partition, "partition tag mixed into seeds");
  add_common(synth, synth_opts);

  // ---- train-words ----
  auto* train_words = app.add_subcommand("train-words",
                                         "train the shared word embedding");
  CommonOpts tw_opts;
  std::vector<std::string> tw_corpora;
  int tw_dim = 20, tw_window = 5, tw_negatives = 5, tw_epochs = 5, tw_min_count = 5;
  train_words->add_option("--corpus", tw_corpora, "platform:path JSONL corpora")
      ->required();
  train_words->add_option("--dim", tw_dim, "embedding dimension");
  train_words->add_option("--window", tw_window, "context window");
  train_words->add_option("--negatives", tw_negatives, "negative samples");
  train_words->add_option("--epochs", tw_epochs, "training epochs");
  train_words->add_option("--min-count", tw_min_count, "vocabulary threshold");
  add_common(train_words, tw_opts);

  // ---- train-emoji ----
  auto* train_emoji = app.add_subcommand("train-emoji",
                                         "train per-platform emoji vectors");
  CommonOpts te_opts;
  std::string te_corpus, te_platform, te_words;
  int te_window = 5, te_negatives = 5, te_epochs = 5, te_emoji_min_count = 50;
  train_emoji->add_option("--corpus", te_corpus, "platform JSONL corpus")->required();
  train_emoji->add_option("--platform", te_platform, "platform name")->required();
  train_emoji->add_option("--words", te_words, "frozen word embedding file")->required();
  train_emoji->add_option("--window", te_window, "context window");
  train_emoji->add_option("--negatives", te_negatives, "negative samples");
  train_emoji->add_option("--epochs", te_epochs, "training epochs");
  train_emoji->add_option("--emoji-min-count", te_emoji_min_count,
                          "minimum emoji occurrences");
  add_common(train_emoji, te_opts);

  // ---- build-map ----
  auto* build_map = app.add_subcommand("build-map",
                                       "build a directional emoji mapping");
  CommonOpts bm_opts;
  std::string bm_source, bm_target, bm_partition;
  build_map->add_option("--source", bm_source, "source emoji embedding file")->required();
  build_map->add_option("--target", bm_target, "target emoji embedding file")->required();
  build_map->add_option("--partition-tag", bm_partition, "data partition tag");
  add_common(build_map, bm_opts);

  // ---- jaccard ----
  auto* jaccard_cmd = app.add_subcommand("jaccard", "neighbor-overlap matrix");
  CommonOpts jc_opts;
  std::string jc_words;
  std::vector<std::string> jc_sets;
  int jc_k = 1000;
  jaccard_cmd->add_option("--words", jc_words, "word embedding file")->required();
  jaccard_cmd->add_option("--set", jc_sets, "label:emoji-embedding-file")->required();
  jaccard_cmd->add_option("-k,--top-k", jc_k, "neighbor set size");
  add_common(jaccard_cmd, jc_opts);

  // ---- profile ----
  auto* profile = app.add_subcommand("profile",
                                     "bias-corrected emoji sentiment profiles");
  CommonOpts pf_opts;
  std::string pf_corpus, pf_platform, pf_lexicon, pf_negators;
  int pf_resamples = 100, pf_min_occurrences = 1;
  profile->add_option("--corpus", pf_corpus, "platform JSONL corpus")->required();
  profile->add_option("--platform", pf_platform, "platform name")->required();
  profile->add_option("--lexicon", pf_lexicon, "sentiment lexicon TSV")->required();
  profile->add_option("--negators", pf_negators, "negator list file");
  profile->add_option("-B,--resamples", pf_resamples, "bootstrap resamples");
  profile->add_option("--min-occurrences", pf_min_occurrences,
                      "minimum emoji occurrences to profile");
  add_common(profile, pf_opts);

  // ---- scale ----
  auto* scale = app.add_subcommand("scale", "scale-of-misinterpretation report");
  CommonOpts sc_opts;
  std::vector<std::string> sc_corpora;
  std::string sc_lexicon, sc_negators, sc_background;
  int sc_resamples = 100, sc_min_occurrences = 1;
  bool sc_welch = false;
  scale->add_option("--corpus", sc_corpora, "platform:path JSONL corpora")->required();
  scale->add_option("--lexicon", sc_lexicon, "sentiment lexicon TSV")->required();
  scale->add_option("--negators", sc_negators, "negator list file");
  scale->add_option("--background", sc_background,
                    "background sample JSONL for the global fraction");
  scale->add_option("-B,--resamples", sc_resamples, "bootstrap resamples");
  scale->add_option("--min-occurrences", sc_min_occurrences,
                    "minimum emoji occurrences to profile");
  scale->add_flag("--welch", sc_welch, "use Welch t-tests instead of CI overlap");
  add_common(scale, sc_opts);

  // ---- evaluate ----
  auto* evaluate = app.add_subcommand("evaluate",
                                      "single-threshold mapping evaluation");
  CommonOpts ev_opts;
  std::string ev_source, ev_target, ev_words, ev_mapping, ev_lexicon, ev_negators;
  std::vector<std::string> ev_emoji_sets;
  std::string ev_partition = "eval";
  double ev_threshold = 0.2;
  int ev_folds = 5;
  evaluate->add_option("--source-corpus", ev_source, "platform:path (eval partition)")
      ->required();
  evaluate->add_option("--target-corpus", ev_target, "platform:path (eval partition)")
      ->required();
  evaluate->add_option("--words", ev_words, "word embedding file")->required();
  evaluate->add_option("--emoji-set", ev_emoji_sets, "emoji embedding files")->required();
  evaluate->add_option("--mapping", ev_mapping, "target->source mapping TSV")->required();
  evaluate->add_option("--lexicon", ev_lexicon, "sentiment lexicon TSV")->required();
  evaluate->add_option("--negators", ev_negators, "negator list file");
  evaluate->add_option("--threshold", ev_threshold, "ambiguity threshold");
  evaluate->add_option("--folds", ev_folds, "CV folds");
  evaluate->add_option("--partition-tag", ev_partition, "eval data partition tag");
  add_common(evaluate, ev_opts);

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "threshold sweep with t-tests");
  CommonOpts sw_opts;
  std::string sw_source, sw_target, sw_words, sw_mapping, sw_lexicon, sw_negators;
  std::vector<std::string> sw_emoji_sets;
  std::vector<double> sw_thresholds;
  std::string sw_partition = "eval";
  int sw_folds = 5;
  sweep->add_option("--source-corpus", sw_source, "platform:path")->required();
  sweep->add_option("--target-corpus", sw_target, "platform:path")->required();
  sweep->add_option("--words", sw_words, "word embedding file")->required();
  sweep->add_option("--emoji-set", sw_emoji_sets, "emoji embedding files")->required();
  sweep->add_option("--mapping", sw_mapping, "target->source mapping TSV")->required();
  sweep->add_option("--lexicon", sw_lexicon, "sentiment lexicon TSV")->required();
  sweep->add_option("--negators", sw_negators, "negator list file");
  sweep->add_option("--thresholds", sw_thresholds, "threshold grid (default 0.1..0.9)");
  sweep->add_option("--folds", sw_folds, "CV folds");
  sweep->add_option("--partition-tag", sw_partition, "eval data partition tag");
  add_common(sweep, sw_opts);

  CLI11_PARSE(app, argc, argv);

  auto split_spec = [](const std::string& s) -> std::pair<Platform, std::string> {
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw Error(Errc::SpecInvalid, "expected platform:path, got " + s);
    return {require_platform(s.substr(0, colon)), s.substr(colon + 1)};
  };

  try {
    if (*ingest) {
      SourceTable sources = ingest_sources.empty() ? SourceTable::defaults()
                                                   : SourceTable::load(ingest_sources);
      IngestOptions io;
      io.dedupe_by_id = ingest_dedupe;
      auto parts = partition_file(ingest_input, sources, io);
      fs::create_directories(ingest_opts.out_dir);
      json counts;
      for (const auto& [platform, corpus] : parts.corpora) {
        write_corpus_jsonl(corpus, (fs::path(ingest_opts.out_dir) /
                                    (std::string(platform_name(platform)) + ".jsonl"))
                                       .string());
        counts[platform_name(platform)] = corpus.tweets.size();
      }
      counts["dropped"] = parts.dropped_unknown;
      counts["malformed"] = parts.dropped_malformed;
      counts["total"] = parts.total_records;
      std::ofstream cf(fs::path(ingest_opts.out_dir) / "counts.json");
      cf << counts.dump(2) << '\n';
      for (const auto& e : parts.errors)
        std::cerr << "warning: line " << e.line_no << ": "
                  << (e.kind == RecordError::MalformedJson
                          ? "malformed json"
                          : "missing field " + e.field)
                  << '\n';
      write_manifest(*ingest, ingest_opts);
    } else if (*synth) {
      auto spec = SynthSpec::from_json_file(synth_spec_path);
      if (synth->count("--seed")) spec.seed = synth_opts.seed;
      auto out = generate(spec, synth_partition);
      fs::create_directories(synth_opts.out_dir);
      const std::string suffix = synth_partition.empty() ? "" : "_" + synth_partition;
      for (const auto& [platform, corpus] : out.corpora)
        write_corpus_jsonl(corpus, (fs::path(synth_opts.out_dir) /
                                    (std::string(platform_name(platform)) + suffix +
                                     ".jsonl"))
                                       .string());
      save_mapping(out.ground_truth,
                   (fs::path(synth_opts.out_dir) / ("ground_truth" + suffix + ".tsv"))
                       .string());
      save_lexicon(out.lexicon,
                   (fs::path(synth_opts.out_dir) / "lexicon.tsv").string());
      out.inventory.save((fs::path(synth_opts.out_dir) / "inventory.txt").string());
      write_manifest(*synth, synth_opts);
    } else if (*train_words) {
      auto inv = load_inventory(tw_opts);
      auto tok = load_tokenize_config(tw_opts);
      std::vector<TokenSeq> united;
      for (const auto& spec : tw_corpora) {
        auto [platform, path] = split_spec(spec);
        auto seqs = load_tokenized(path, platform, tok, inv);
        for (auto& s : seqs) united.push_back(strip_emojis(s));
      }
      auto cfg = make_train_config(tw_opts, tw_dim, tw_window, tw_negatives,
                                   tw_epochs, tw_min_count, 1);
      auto matrix = train_word_embedding(united, cfg);
      fs::create_directories(tw_opts.out_dir);
      save_embedding(matrix, (fs::path(tw_opts.out_dir) / "words.vec").string());
      write_manifest(*train_words, tw_opts);
    } else if (*train_emoji) {
      auto inv = load_inventory(te_opts);
      auto tok = load_tokenize_config(te_opts);
      Platform platform = require_platform(te_platform);
      auto seqs = load_tokenized(te_corpus, platform, tok, inv);
      auto words = load_embedding(te_words);
      auto cfg = make_train_config(te_opts, words.dim, te_window, te_negatives,
                                   te_epochs, 1, te_emoji_min_count);
      auto set = train_emoji_vectors(platform, seqs, words, cfg);
      fs::create_directories(te_opts.out_dir);
      save_emoji_set(set, (fs::path(te_opts.out_dir) /
                           ("emoji_" + std::string(platform_name(platform)) + ".vec"))
                              .string());
      write_manifest(*train_emoji, te_opts);
    } else if (*build_map) {
      auto source = load_emoji_set(bm_source);
      auto target = load_emoji_set(bm_target);
      auto table = build_mapping(source, target);
      table.partition_tag = bm_partition;
      fs::create_directories(bm_opts.out_dir);
      const std::string stem = std::string("mapping_") +
                               platform_name(table.source_platform) + "_" +
                               platform_name(table.target_platform);
      save_mapping(table, (fs::path(bm_opts.out_dir) / (stem + ".tsv")).string());
      // emojis present on one platform only
      json excluded = json::array();
      for (const auto& [label, vec] : source.vectors)
        if (!target.vectors.count(label)) excluded.push_back(label + " (source only)");
      for (const auto& [label, vec] : target.vectors)
        if (!source.vectors.count(label)) excluded.push_back(label + " (target only)");
      std::ofstream xf(fs::path(bm_opts.out_dir) / (stem + "_excluded.json"));
      xf << excluded.dump(2) << '\n';
      write_manifest(*build_map, bm_opts);
    } else if (*jaccard_cmd) {
      auto words = load_embedding(jc_words);
      std::map<std::string, EmojiEmbeddingSet> sets;
      for (const auto& spec : jc_sets) {
        auto colon = spec.find(':');
        if (colon == std::string::npos)
          throw Error(Errc::SpecInvalid, "expected label:path, got " + spec);
        sets.emplace(spec.substr(0, colon), load_emoji_set(spec.substr(colon + 1)));
      }
      auto matrix = neighbor_overlap_matrix(sets, words, jc_k);
      fs::create_directories(jc_opts.out_dir);
      std::ofstream out(fs::path(jc_opts.out_dir) / "overlap.csv");
      for (const auto& label : matrix.labels) out << ',' << label;
      out << '\n';
      for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
        out << matrix.labels[i];
        for (double cell : matrix.cells[i]) out << ',' << cell;
        out << '\n';
      }
      write_manifest(*jaccard_cmd, jc_opts);
    } else if (*profile) {
      auto inv = load_inventory(pf_opts);
      auto tok = load_tokenize_config(pf_opts);
      Platform platform = require_platform(pf_platform);
      auto seqs = load_tokenized(pf_corpus, platform, tok, inv);
      std::shared_ptr<Lexicon> lex;
      auto scorer = make_lexicon_scorer(pf_lexicon, pf_negators, lex);
      const double bias = platform_bias(seqs, scorer);
      ProfileOptions popts;
      popts.resamples = pf_resamples;
      auto profiles = platform_profiles(seqs, platform_name(platform), scorer, bias,
                                        popts, pf_opts.seed, pf_min_occurrences);
      fs::create_directories(pf_opts.out_dir);
      std::ofstream out(fs::path(pf_opts.out_dir) /
                        ("profiles_" + std::string(platform_name(platform)) + ".csv"));
      out << "platform,emoji,mean,var,ci_low,ci_high,n\n";
      for (const auto& p : profiles)
        out << p.platform << ',' << p.emoji << ',' << p.mean_adjusted << ','
            << p.variance << ',' << p.ci_low << ',' << p.ci_high << ',' << p.n << '\n';
      json bj;
      bj["platform"] = platform_name(platform);
      bj["bias"] = bias;
      std::ofstream bf(fs::path(pf_opts.out_dir) /
                       ("bias_" + std::string(platform_name(platform)) + ".json"));
      bf << bj.dump(2) << '\n';
      write_manifest(*profile, pf_opts);
    } else if (*scale) {
      auto inv = load_inventory(sc_opts);
      auto tok = load_tokenize_config(sc_opts);
      std::shared_ptr<Lexicon> lex;
      auto scorer = make_lexicon_scorer(sc_lexicon, sc_negators, lex);
      std::map<std::string, std::vector<TokenSeq>> corpora;
      std::vector<SentimentProfile> profiles;
      std::map<std::string, std::map<std::string, std::vector<double>>> raw;
      ProfileOptions popts;
      popts.resamples = sc_resamples;
      for (const auto& spec : sc_corpora) {
        auto [platform, path] = split_spec(spec);
        auto seqs = load_tokenized(path, platform, tok, inv);
        const double bias = platform_bias(seqs, scorer);
        auto prof = platform_profiles(seqs, platform_name(platform), scorer, bias,
                                      popts, sc_opts.seed, sc_min_occurrences);
        profiles.insert(profiles.end(), prof.begin(), prof.end());
        raw[platform_name(platform)] = emoji_adjusted_scores(seqs, scorer, bias);
        corpora.emplace(platform_name(platform), std::move(seqs));
      }
      std::vector<TokenSeq> background;
      if (!sc_background.empty()) {
        auto parts = partition_file(sc_background, SourceTable::defaults());
        for (auto& [platform, corpus] : parts.corpora)
          for (auto& tweet : corpus.tweets)
            background.push_back(tokenize(tweet.text, tok, inv));
      }
      DivergenceOptions dopts;
      dopts.use_welch = sc_welch;
      auto report = divergence_report(profiles, corpora, sc_welch ? &raw : nullptr,
                                      background.empty() ? nullptr : &background,
                                      dopts);
      json j;
      j["emoji_divergent_fraction"] = report.emoji_divergent_fraction;
      j["tweet_affected_fraction"] = report.tweet_affected_fraction;
      if (report.global_sample_fraction)
        j["global_sample_fraction"] = *report.global_sample_fraction;
      json flagged = json::object();
      for (const auto& [emoji, pairs] : report.flagged) {
        json arr = json::array();
        for (const auto& [a, b] : pairs) arr.push_back(a + "|" + b);
        flagged[emoji] = arr;
      }
      j["flagged"] = flagged;
      fs::create_directories(sc_opts.out_dir);
      std::ofstream out(fs::path(sc_opts.out_dir) / "divergence.json");
      out << j.dump(2) << '\n';
      write_manifest(*scale, sc_opts);
    } else if (*evaluate || *sweep) {
      const bool is_sweep = static_cast<bool>(*sweep);
      auto& opts = is_sweep ? sw_opts : ev_opts;
      auto inv = load_inventory(opts);
      auto tok = load_tokenize_config(opts);
      auto [src_platform, src_path] = split_spec(is_sweep ? sw_source : ev_source);
      auto [tgt_platform, tgt_path] = split_spec(is_sweep ? sw_target : ev_target);
      EvalData source{load_tokenized(src_path, src_platform, tok, inv), src_platform,
                      is_sweep ? sw_partition : ev_partition};
      EvalData target{load_tokenized(tgt_path, tgt_platform, tok, inv), tgt_platform,
                      is_sweep ? sw_partition : ev_partition};
      auto words = load_embedding(is_sweep ? sw_words : ev_words);
      std::map<Platform, EmojiEmbeddingSet> sets;
      for (const auto& path : is_sweep ? sw_emoji_sets : ev_emoji_sets) {
        auto set = load_emoji_set(path);
        sets.emplace(set.platform, std::move(set));
      }
      auto table = load_mapping(is_sweep ? sw_mapping : ev_mapping);
      std::shared_ptr<Lexicon> lex;
      auto scorer = make_lexicon_scorer(is_sweep ? sw_lexicon : ev_lexicon,
                                        is_sweep ? sw_negators : ev_negators, lex);
      EvalConfig cfg;
      cfg.words = &words;
      cfg.emoji_sets = &sets;
      cfg.table = &table;
      cfg.scorer = scorer;
      cfg.folds = is_sweep ? sw_folds : ev_folds;
      cfg.seed = opts.seed;
      fs::create_directories(opts.out_dir);
      if (is_sweep) {
        auto grid = sw_thresholds.empty() ? default_threshold_grid() : sw_thresholds;
        auto outcomes = threshold_sweep(source, target, grid, cfg);
        write_report_files(outcomes, opts.out_dir, "sweep");
        // mapping-vs-baseline significance over the whole sweep
        std::vector<double> acc_map, acc_nomap, acc_noemoji;
        for (const auto& oc : outcomes) {
          if (!oc.ok) continue;
          for (const auto& f : oc.report.fold_metrics.at(ReprMode::Mapping))
            acc_map.push_back(f.accuracy);
          for (const auto& f : oc.report.fold_metrics.at(ReprMode::NoMapping))
            acc_nomap.push_back(f.accuracy);
          for (const auto& f : oc.report.fold_metrics.at(ReprMode::NoEmojis))
            acc_noemoji.push_back(f.accuracy);
        }
        json tests;
        if (acc_map.size() >= 2) {
          auto t1 = t_test(acc_map, acc_nomap);
          auto t2 = t_test(acc_map, acc_noemoji);
          tests["mapping_vs_no_mapping"] = {{"t", t1.t_statistic},
                                            {"p", t1.p_value},
                                            {"dof", t1.dof}};
          tests["mapping_vs_no_emojis"] = {{"t", t2.t_statistic},
                                           {"p", t2.p_value},
                                           {"dof", t2.dof}};
        }
        std::ofstream tf(fs::path(opts.out_dir) / "sweep_ttests.json");
        tf << tests.dump(2) << '\n';
        write_manifest(*sweep, sw_opts);
      } else {
        auto report = compare_pair(source, target, ev_threshold, cfg);
        std::vector<SweepOutcome> one(1);
        one[0].threshold = ev_threshold;
        one[0].ok = true;
        one[0].report = report;
        write_report_files(one, opts.out_dir, "evaluate");
        write_manifest(*evaluate, ev_opts);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
