// Golden-run tests for the command-line tool. The binary path and the data
// directory come from the environment (set by ctest).

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

std::string bin() {
  const char* b = std::getenv("GKDECOMP_BIN");
  REQUIRE_MESSAGE(b != nullptr, "GKDECOMP_BIN not set; run through ctest");
  return b;
}

std::string data(const std::string& name) {
  const char* d = std::getenv("GKDECOMP_DATA");
  REQUIRE_MESSAGE(d != nullptr, "GKDECOMP_DATA not set; run through ctest");
  return std::string(d) + "/" + name;
}

std::string golden_dir() {
  const char* d = std::getenv("GKDECOMP_GOLDEN");
  REQUIRE_MESSAGE(d != nullptr, "GKDECOMP_GOLDEN not set; run through ctest");
  return d;
}

std::filesystem::path tmp_dir() {
  auto p = std::filesystem::temp_directory_path() / "gkd_cli_tests";
  std::filesystem::create_directories(p);
  return p;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const std::string out_path = (tmp_dir() / "out.txt").string();
  const std::string cmd =
      env_prefix + (env_prefix.empty() ? "" : " ") + "\"" + bin() + "\" " + args +
      " > \"" + out_path + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out_path);
  std::stringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing file: ", path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Config echo lines carry absolute input paths; drop them so the golden
// comparison is location-independent.
std::string strip_config(const std::string& text) {
  std::stringstream in(text), out;
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("# ", 0) != 0) out << line << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("analyze matches committed golden output") {
  RunResult block = run("analyze " + data("block.json"));
  CHECK(block.exit_code == 0);
  CHECK(strip_config(block.output) == strip_config(read_file(golden_dir() + "/analyze_block.txt")));

  RunResult delta = run("analyze " + data("delta_perturbed.json"));
  CHECK(delta.exit_code == 0);
  CHECK(strip_config(delta.output) == strip_config(read_file(golden_dir() + "/analyze_delta.txt")));
  CHECK(contains(delta.output, "H(K) = 0.000000"));
}

TEST_CASE("analyze rejects malformed input with exit code 2") {
  const auto bad = tmp_dir() / "bad.json";
  std::ofstream(bad) << "{ not json";
  RunResult r = run("analyze " + bad.string());
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "error"));

  RunResult missing = run("analyze " + (tmp_dir() / "nonexistent.json").string());
  CHECK(missing.exit_code == 2);
}

TEST_CASE("decompose brute on the block example finds the component labeling") {
  const auto labels = tmp_dir() / "block_labels.json";
  RunResult r = run("decompose " + data("block.json") +
                    " --method brute --lambda 1 --labels-out " + labels.string());
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "objective = 1.000000"));
  CHECK(contains(r.output, "P_err = 0.000000"));
  const std::string written = read_file(labels.string());
  CHECK(contains(written, "\"phi_x\""));

  RunResult rerun = run("decompose " + data("block.json") +
                        " --method brute --lambda 1 --labels-out " + labels.string());
  CHECK(rerun.output == r.output);  // deterministic
}

TEST_CASE("decompose spectral on the perturbed example") {
  const auto labels = tmp_dir() / "delta_labels.json";
  RunResult r = run("decompose " + data("delta_perturbed.json") +
                    " --method spectral --lambda 1 --labels-out " + labels.string());
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "P_err = 0.012500"));
  CHECK(contains(r.output, "S_X = {2}, S_Y = {3}"));
}

TEST_CASE("decompose recursion stops when no split improves") {
  // The block example has exactly two components; asking for three labels
  // still returns the two-way split.
  RunResult r = run("decompose " + data("block.json") +
                    " --method spectral --lambda 1 --clusters 3 --labels-out " +
                    (tmp_dir() / "k3.json").string());
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "L = 2"));
}

TEST_CASE("default output directory comes from the environment") {
  const auto dir = tmp_dir() / "outdir_env";
  std::filesystem::remove_all(dir);
  RunResult r = run("decompose " + data("block.json") + " --method brute --lambda 1",
                    "GKDECOMP_OUTDIR=" + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(std::filesystem::exists(dir / "labeling.json"));
}

TEST_CASE("negative search parameters are parse errors") {
  RunResult r = run("decompose " + data("block.json") + " --method brute --lambda -2");
  CHECK(r.exit_code == 2);

  RunResult none = run("decompose " + data("block.json") + " --method brute");
  CHECK(none.exit_code == 2);  // exactly one of --lambda / --epsilon

  RunResult both = run("decompose " + data("block.json") +
                       " --method brute --lambda 1 --epsilon 0.1");
  CHECK(both.exit_code == 2);
}

TEST_CASE("decompose enforces the brute-force size limit") {
  // 13x13 uniform: n_X + n_Y = 26 > 24.
  const auto big = tmp_dir() / "big.csv";
  {
    std::ofstream f(big);
    for (int i = 0; i < 13; ++i) {
      for (int j = 0; j < 13; ++j) f << (j ? "," : "") << 1.0 / 169.0;
      f << "\n";
    }
  }
  RunResult r = run("decompose " + big.string() + " --method brute --lambda 1");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "size limit"));
}

TEST_CASE("rates emits the alpha sweep") {
  RunResult r = run("rates " + data("eps_example.json") + " " + data("eps_labeling.json") +
                    " --alpha-grid 5");
  CHECK(r.exit_code == 0);
  CHECK(strip_config(r.output) == strip_config(read_file(golden_dir() + "/rates_eps.txt")));
  CHECK(contains(r.output, "alpha,R_X,R_Y,R_H"));

  RunResult gk = run("rates " + data("block.json") + " " + data("block_labeling.json") +
                     " --alpha-grid 3");
  CHECK(gk.exit_code == 0);
  CHECK(contains(gk.output, ",0.000000\n"));  // R_H column is zero

  // Dimension mismatch is an input error.
  RunResult bad = run("rates " + data("eps_example.json") + " " + data("block_labeling.json"));
  CHECK(bad.exit_code == 2);
}

TEST_CASE("tradeoff sweeps both methods") {
  RunResult brute = run("tradeoff " + data("delta_perturbed.json") +
                        " --grid-epsilon 0,0.05,0.1,0.5 --method brute");
  CHECK(brute.exit_code == 0);
  CHECK(strip_config(brute.output) == strip_config(read_file(golden_dir() + "/tradeoff_delta.txt")));

  RunResult flat = run("tradeoff " + data("block.json") +
                       " --grid-epsilon 0,0.1 --method brute");
  CHECK(flat.exit_code == 0);
  CHECK(contains(flat.output, "0.000000,1.000000,0.000000,0.000000,brute"));

  RunResult spectral = run("tradeoff " + data("delta_perturbed.json") +
                           " --grid-lambda 0.5,1,16 --method spectral");
  CHECK(spectral.exit_code == 0);
  CHECK(contains(spectral.output, "spectral"));
}

TEST_CASE("simulate runs every scheme end to end") {
  const auto bundle = tmp_dir() / "bundle.bin";
  RunResult gk = run("simulate " + data("block.json") + " --scheme gk --n 20000 --seed 5" +
                     " --bundle-out " + bundle.string());
  CHECK(gk.exit_code == 0);
  CHECK(contains(gk.output, "decode: exact"));
  CHECK(std::filesystem::exists(bundle));

  RunResult helper = run("simulate " + data("delta_perturbed.json") + " " +
                         data("block_labeling.json") +
                         " --scheme binary-helper --n 20000 --seed 5");
  CHECK(helper.exit_code == 0);
  CHECK(contains(helper.output, "decode: exact"));

  RunResult limited = run("simulate " + data("delta_perturbed.json") + " " +
                          data("block_labeling.json") +
                          " --scheme limited-helper --n 20000 --seed 5");
  CHECK(limited.exit_code == 0);

  RunResult missing = run("simulate " + data("delta_perturbed.json") +
                          " --scheme binary-helper --n 1000 --seed 5");
  CHECK(missing.exit_code == 2);  // labeling required
}

TEST_CASE("simulate verifies and rejects bundles") {
  const auto bundle = tmp_dir() / "verify.bin";
  RunResult write = run("simulate " + data("delta_perturbed.json") + " " +
                        data("block_labeling.json") +
                        " --scheme binary-helper --n 5000 --seed 11 --bundle-out " +
                        bundle.string());
  REQUIRE(write.exit_code == 0);

  RunResult verify = run("simulate " + data("delta_perturbed.json") + " " +
                         data("block_labeling.json") + " --bundle-in " + bundle.string());
  CHECK(verify.exit_code == 0);
  CHECK(contains(verify.output, "decode: exact"));

  // Flip one payload byte near the end: the decode must not silently pass.
  {
    std::fstream f(bundle, std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(0, std::ios::end);
    const auto size = static_cast<long>(f.tellg());
    f.seekp(size - 40);
    char b;
    f.seekg(size - 40);
    f.get(b);
    f.seekp(size - 40);
    f.put(static_cast<char>(b ^ 0x55));
  }
  RunResult corrupted = run("simulate " + data("delta_perturbed.json") + " " +
                            data("block_labeling.json") + " --bundle-in " + bundle.string());
  CHECK(corrupted.exit_code == 1);
  CHECK(contains(corrupted.output, "MISMATCH"));
}

TEST_CASE("network feasibility exit codes") {
  RunResult pass = run("network " + data("star10.json") + " " + data("block.json") + " " +
                       data("block_labeling.json"));
  CHECK(pass.exit_code == 0);
  CHECK(contains(pass.output, "overall: feasible"));

  RunResult fail = run("network " + data("star_nohelper.json") + " " +
                       data("delta_perturbed.json") + " " + data("block_labeling.json"));
  CHECK(fail.exit_code == 1);
  CHECK(contains(fail.output, "[FAIL] rho(s_H;t)"));
  CHECK(contains(fail.output, "overall: infeasible"));

  RunResult limited = run("network " + data("star10.json") + " " +
                          data("delta_perturbed.json") + " " + data("block_labeling.json") +
                          " --limited");
  CHECK(limited.exit_code == 0);

  const auto rows = tmp_dir() / "rows.csv";
  RunResult with_rows = run("network " + data("star10.json") + " " + data("block.json") +
                            " " + data("block_labeling.json") + " --out " + rows.string());
  CHECK(with_rows.exit_code == 0);
  const std::string csv = read_file(rows.string());
  CHECK(contains(csv, "condition,required,min_cut,pass"));
  CHECK(contains(csv, "rho(s_H;t),0.000000,10.000000,1"));
}
