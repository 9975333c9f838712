#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* p = std::getenv("EMOJIMAP_CLI");
  REQUIRE_MESSAGE(p != nullptr, "EMOJIMAP_CLI must point at the binary");
  return p;
}

int run(const std::string& args) {
  return std::system((cli() + " " + args + " > cli_test_stdout.txt 2> cli_test_stderr.txt").c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::path("cli_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_spec(const fs::path& p) {
  std::ofstream out(p);
  out << R"({
  "seed": 5,
  "platforms": ["Android", "iOS"],
  "tweets_per_platform": 300,
  "filler_words": 50,
  "emojis": [
    {"code": "U+1F600", "polarity": 1.0, "context_words": 5},
    {"code": "U+1F622", "polarity": -1.0, "context_words": 5}
  ],
  "correspondence": {"U+1F600": "U+1F622", "U+1F622": "U+1F600"}
})";
}

}  // namespace

TEST_CASE("no subcommand is an error") { CHECK(run("") != 0); }

TEST_CASE("unknown flags are an error") {
  CHECK(run("synth --no-such-flag") != 0);
}

TEST_CASE("missing input file yields a nonzero exit and an error line") {
  TempDir tmp("missing");
  CHECK(run("ingest --input does_not_exist.jsonl --out " + tmp.path.string()) != 0);
  const auto err = slurp("cli_test_stderr.txt");
  CHECK(err.rfind("error:", 0) == 0);
  CHECK(err.find('\n') == err.size() - 1);  // single line
}

TEST_CASE("synth then ingest round-trips through platform detection") {
  TempDir tmp("ingest");
  write_spec(tmp.path / "spec.json");
  REQUIRE(run("synth --spec " + (tmp.path / "spec.json").string() + " --out " +
              tmp.path.string()) == 0);
  REQUIRE(fs::exists(tmp.path / "Android.jsonl"));
  REQUIRE(fs::exists(tmp.path / "iOS.jsonl"));
  REQUIRE(fs::exists(tmp.path / "manifest_synth.json"));

  // concatenate and re-ingest
  {
    std::ofstream out(tmp.path / "all.jsonl", std::ios::binary);
    out << slurp(tmp.path / "Android.jsonl") << slurp(tmp.path / "iOS.jsonl");
  }
  fs::path ingest_dir = tmp.path / "ingested";
  REQUIRE(run("ingest --input " + (tmp.path / "all.jsonl").string() + " --out " +
              ingest_dir.string()) == 0);
  CHECK(slurp(ingest_dir / "Android.jsonl") == slurp(tmp.path / "Android.jsonl"));
  CHECK(slurp(ingest_dir / "iOS.jsonl") == slurp(tmp.path / "iOS.jsonl"));
  const auto counts = slurp(ingest_dir / "counts.json");
  CHECK(counts.find("\"Android\": 300") != std::string::npos);
  CHECK(counts.find("\"dropped\": 0") != std::string::npos);
}

TEST_CASE("deterministic training runs are byte-identical") {
  TempDir tmp("determ");
  write_spec(tmp.path / "spec.json");
  REQUIRE(run("synth --spec " + (tmp.path / "spec.json").string() + " --out " +
              tmp.path.string()) == 0);
  const std::string train_args =
      "train-words --corpus Android:" + (tmp.path / "Android.jsonl").string() +
      " --corpus iOS:" + (tmp.path / "iOS.jsonl").string() + " --inventory " +
      (tmp.path / "inventory.txt").string() +
      " --epochs 2 --min-count 2 --deterministic --seed 11 --out ";
  REQUIRE(run(train_args + (tmp.path / "run1").string()) == 0);
  REQUIRE(run(train_args + (tmp.path / "run2").string()) == 0);
  const auto w1 = slurp(tmp.path / "run1" / "words.vec");
  REQUIRE(!w1.empty());
  CHECK(w1 == slurp(tmp.path / "run2" / "words.vec"));
}

TEST_CASE("train, map and evaluate chain runs end to end") {
  TempDir tmp("chain");
  write_spec(tmp.path / "spec.json");
  const std::string spec = (tmp.path / "spec.json").string();
  REQUIRE(run("synth --spec " + spec + " --partition train --out " +
              tmp.path.string()) == 0);
  REQUIRE(run("synth --spec " + spec + " --partition eval --out " +
              tmp.path.string()) == 0);
  const std::string inv = " --inventory " + (tmp.path / "inventory.txt").string();
  const std::string common = " --deterministic --seed 3 --out " + tmp.path.string();
  REQUIRE(run("train-words --corpus Android:" +
              (tmp.path / "Android_train.jsonl").string() + " --corpus iOS:" +
              (tmp.path / "iOS_train.jsonl").string() + inv +
              " --epochs 2 --min-count 2" + common) == 0);
  const std::string words = " --words " + (tmp.path / "words.vec").string();
  REQUIRE(run("train-emoji --corpus " + (tmp.path / "Android_train.jsonl").string() +
              " --platform Android" + words + inv + " --emoji-min-count 20 --epochs 2" +
              common) == 0);
  REQUIRE(run("train-emoji --corpus " + (tmp.path / "iOS_train.jsonl").string() +
              " --platform iOS" + words + inv + " --emoji-min-count 20 --epochs 2" +
              common) == 0);
  REQUIRE(run("build-map --source " + (tmp.path / "emoji_iOS.vec").string() +
              " --target " + (tmp.path / "emoji_Android.vec").string() +
              " --partition-tag train" + common) == 0);
  REQUIRE(fs::exists(tmp.path / "mapping_iOS_Android.tsv"));
  REQUIRE(fs::exists(tmp.path / "mapping_iOS_Android_excluded.json"));

  REQUIRE(run("evaluate --source-corpus iOS:" +
              (tmp.path / "iOS_eval.jsonl").string() + " --target-corpus Android:" +
              (tmp.path / "Android_eval.jsonl").string() + words + " --emoji-set " +
              (tmp.path / "emoji_Android.vec").string() + " --emoji-set " +
              (tmp.path / "emoji_iOS.vec").string() + " --mapping " +
              (tmp.path / "mapping_iOS_Android.tsv").string() + " --lexicon " +
              (tmp.path / "lexicon.tsv").string() + inv +
              " --threshold 0.2 --partition-tag eval" + common) == 0);
  const auto csv = slurp(tmp.path / "evaluate.csv");
  CHECK(csv.rfind("source,target,threshold,mode,fold,accuracy,f1\n", 0) == 0);
  // 3 modes x 5 folds + header
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);
  const auto json = slurp(tmp.path / "evaluate.json");
  CHECK(json.find("\"a1\"") != std::string::npos);
  CHECK(json.find("\"no_emojis\"") != std::string::npos);

  // using the mapping against its own training partition must fail
  CHECK(run("evaluate --source-corpus iOS:" +
            (tmp.path / "iOS_train.jsonl").string() + " --target-corpus Android:" +
            (tmp.path / "Android_train.jsonl").string() + words + " --emoji-set " +
            (tmp.path / "emoji_Android.vec").string() + " --emoji-set " +
            (tmp.path / "emoji_iOS.vec").string() + " --mapping " +
            (tmp.path / "mapping_iOS_Android.tsv").string() + " --lexicon " +
            (tmp.path / "lexicon.tsv").string() + inv +
            " --threshold 0.2 --partition-tag train" + common) != 0);
  const auto err = slurp("cli_test_stderr.txt");
  CHECK(err.find("partition") != std::string::npos);
}

TEST_CASE("jaccard and profile emit csv reports") {
  TempDir tmp("reports");
  write_spec(tmp.path / "spec.json");
  const std::string spec = (tmp.path / "spec.json").string();
  REQUIRE(run("synth --spec " + spec + " --out " + tmp.path.string()) == 0);
  const std::string inv = " --inventory " + (tmp.path / "inventory.txt").string();
  const std::string common = " --deterministic --seed 3 --out " + tmp.path.string();
  REQUIRE(run("train-words --corpus Android:" +
              (tmp.path / "Android.jsonl").string() + " --corpus iOS:" +
              (tmp.path / "iOS.jsonl").string() + inv +
              " --epochs 2 --min-count 2" + common) == 0);
  const std::string words = " --words " + (tmp.path / "words.vec").string();
  for (const char* p : {"Android", "iOS"})
    REQUIRE(run("train-emoji --corpus " +
                (tmp.path / (std::string(p) + ".jsonl")).string() + " --platform " +
                p + words + inv + " --emoji-min-count 20 --epochs 2" + common) == 0);

  REQUIRE(run("jaccard" + words + " --set Android:" +
              (tmp.path / "emoji_Android.vec").string() + " --set iOS:" +
              (tmp.path / "emoji_iOS.vec").string() + " -k 10 --out " +
              tmp.path.string()) == 0);
  const auto overlap = slurp(tmp.path / "overlap.csv");
  CHECK(overlap.find(",Android,iOS") != std::string::npos);
  CHECK(overlap.find("Android,1") != std::string::npos);

  REQUIRE(run("profile --corpus " + (tmp.path / "Android.jsonl").string() +
              " --platform Android --lexicon " + (tmp.path / "lexicon.tsv").string() +
              inv + " -B 50 --min-occurrences 10 --seed 2 --out " +
              tmp.path.string()) == 0);
  const auto profiles = slurp(tmp.path / "profiles_Android.csv");
  CHECK(profiles.rfind("platform,emoji,mean,var,ci_low,ci_high,n\n", 0) == 0);
  CHECK(profiles.find("Android,U+1F600") != std::string::npos);
  CHECK(fs::exists(tmp.path / "bias_Android.json"));
}
