#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coin/dataset.hpp"
#include "coin/model_io.hpp"
#include "coin/pgm.hpp"
#include "coin/raster.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string cli = COIN_CLI_PATH;

int run(const std::string& args, const fs::path& log = {}) {
  std::string cmd = cli + " " + args;
  if (!log.empty()) cmd += " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::size_t line_count(const fs::path& path) {
  std::ifstream in(path);
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  return lines;
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "coin_cli_test";
  return dir;
}

}  // namespace

TEST_CASE("cli end to end: generate, train, classify, evaluate") {
  const fs::path dir = work_dir();
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path corpus = dir / "corpus";
  const fs::path manifest = corpus / "manifest.tsv";
  const fs::path model = dir / "model.bin";
  const fs::path log = dir / "log.txt";

  // small corpus: 70 bases x 4 rotations
  REQUIRE(run("generate --out " + corpus.string() + " --step 90 --side 128 --seed 3", log) == 0);
  CHECK(line_count(manifest) == 280);
  CHECK(slurp(log).find("seed: 3") != std::string::npos);

  // the same seeded run writes byte-identical artifacts
  const fs::path corpus2 = dir / "corpus2";
  REQUIRE(run("generate --out " + corpus2.string() + " --step 90 --side 128 --seed 3", log) == 0);
  CHECK(slurp(manifest) == slurp(corpus2 / "manifest.tsv"));
  CHECK(slurp(corpus / "13" / "4_270.pgm") == slurp(corpus2 / "13" / "4_270.pgm"));

  // train deterministically, twice
  const std::string train_args = " --manifest " + manifest.string() +
                                 " --max-epochs 25 --patience 25 --seed 11 --model-out ";
  REQUIRE(run("train" + train_args + model.string(), log) == 0);
  const std::string table = slurp(log);
  CHECK(table.find("training") != std::string::npos);
  CHECK(table.find("252") != std::string::npos);  // floor(0.9 * 280)
  const fs::path model2 = dir / "model2.bin";
  REQUIRE(run("train" + train_args + model2.string(), log) == 0);
  CHECK(slurp(model) == slurp(model2));

  // classify an in-corpus image: label 12 belongs to the rupee-10 block
  REQUIRE(run("classify --model " + model.string() + " " + (corpus / "12" / "0_90.pgm").string(),
              log) == 0);
  const std::string verdict = slurp(log);
  CHECK(verdict.find("class:") != std::string::npos);
  CHECK(verdict.find("denomination: ₹") != std::string::npos);
  CHECK(verdict.find("confidence:") != std::string::npos);

  // evaluate both scopes, human and tsv
  const std::string eval_base =
      "evaluate --model " + model.string() + " --manifest " + manifest.string();
  REQUIRE(run(eval_base + " --scope test --seed 11", log) == 0);
  CHECK(slurp(log).find("scope: test (14 samples)") != std::string::npos);
  REQUIRE(run(eval_base + " --scope all --tsv", log) == 0);
  const std::string tsv = slurp(log);
  CHECK(tsv.find("samples\t280") != std::string::npos);
  CHECK(tsv.find("target\\output") != std::string::npos);

  fs::remove_all(dir);
}

TEST_CASE("cli preprocess writes the trim and optional stages") {
  const fs::path dir = work_dir() / "pre";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path log = dir / "log.txt";

  coin::SyntheticCoinSpec spec;
  spec.side = 128;
  const fs::path raw = dir / "raw.pgm";
  coin::write_pgm(coin::render_base_coin(spec, 5, 0), raw);

  const fs::path out = dir / "trimmed.pgm";
  REQUIRE(run("preprocess " + raw.string() + " " + out.string() + " --dump-stages", log) == 0);
  const coin::GrayImage trimmed = coin::read_pgm(out);
  CHECK(trimmed.rows() == 100);
  CHECK(trimmed.cols() == 100);
  CHECK(fs::exists(dir / "trimmed.gray.pgm"));
  CHECK(fs::exists(dir / "trimmed.edges.pgm"));
  CHECK(fs::exists(dir / "trimmed.cropped.pgm"));
  CHECK(fs::exists(dir / "trimmed.grid.pgm"));
  CHECK(coin::read_pgm(dir / "trimmed.grid.pgm").rows() == 20);

  fs::remove_all(dir);
}

TEST_CASE("cli exit codes follow the taxonomy") {
  const fs::path dir = work_dir() / "codes";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path log = dir / "log.txt";

  // 2: I/O failures
  CHECK(run("generate --out /proc/nonexistent/corpus --step 90 --side 128", log) == 2);
  CHECK(run("preprocess " + (dir / "missing.pgm").string() + " " + (dir / "o.pgm").string(),
            log) == 2);

  // 3: no circle in a blank image
  const fs::path blank = dir / "blank.pgm";
  coin::write_pgm(coin::GrayImage::Constant(64, 64, 0), blank);
  CHECK(run("preprocess " + blank.string() + " " + (dir / "o.pgm").string(), log) == 3);

  // 4: manifest problems
  CHECK(run("train --manifest " + (dir / "missing.tsv").string() + " --model-out " +
                (dir / "m.bin").string(),
            log) == 4);
  const fs::path empty_manifest = dir / "empty.tsv";
  std::ofstream(empty_manifest).close();
  CHECK(run("train --manifest " + empty_manifest.string() + " --model-out " +
                (dir / "m.bin").string(),
            log) == 4);
  const fs::path stub_model = dir / "stub.bin";
  coin::save_model(coin::init_model({400, 25, 14}, 1), stub_model);
  CHECK(run("evaluate --model " + stub_model.string() + " --manifest " +
                (dir / "missing.tsv").string(),
            log) == 4);
  CHECK(run("evaluate --model " + (dir / "missing-model.bin").string() + " --manifest " +
                (dir / "missing.tsv").string(),
            log) == 5);

  // 3: classify refuses a coin-free image before touching the network
  CHECK(run("classify --model " + stub_model.string() + " " + blank.string(), log) == 3);

  // 5: bad model files
  const fs::path bad_model = dir / "bad_model.bin";
  std::ofstream bad(bad_model, std::ios::binary);
  bad << "XXINMLP1 not a real model";
  bad.close();
  CHECK(run("classify --model " + bad_model.string() + " " + blank.string(), log) == 5);

  fs::remove_all(dir);
}
