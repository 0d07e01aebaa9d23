#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qpol/scenario.hpp"

using namespace qpol;
namespace fs = std::filesystem;

namespace {

ScenarioConfig config_from(const std::string& text, std::optional<ScenarioKind> kind = std::nullopt,
                           const RunOptions& opts = {}) {
  return parse_config(ordered_json::parse(text), kind, opts);
}

const char* kEvolve = R"({"kind": "evolve", "parameters": {"a": [1, 0], "b": [0.7071067811865476, 0.7071067811865476],
  "energy": 1.0, "samples": 101}})";

const char* kOptimize = R"({"kind": "optimize-coherence", "parameters": {"j": {"jxx": 3, "jyy": 1, "jxy": 1}}})";

const char* kCorrespondence = R"({"kind": "correspondence", "parameters": {
  "quantum": {"a": [1, 0], "b": [0.7071067811865476, 0.7071067811865476], "energy": 1.0},
  "optical": {"j": {"jxx": 3, "jyy": 1, "jxy": 1}}}})";

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qpol_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  int cli(const std::string& args) {
    const std::string cmd = std::string("\"") + QPOL_CLI_PATH + "\" " + args + " 2>\"" + (dir_ / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

}  // namespace

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2.0");
  EXPECT_EQ(format_double(-1e-20), "-9.9999999999999995e-21");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "null");
}

TEST(EmitCsv, HeaderOnlyAndSingleRecord) {
  EXPECT_EQ(emit_csv(trajectory_table({})), "t,re_c0,im_c0,re_c1,im_c1,bx,by,bz,fidelity\n");
  const TrajectoryRecord r{0.5, QuantumState{1.0, 0.0}, {0.0, 0.0, 1.0}, 0.5};
  const auto l = lines(emit_csv(trajectory_table({r})));
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[1], "0.5,1.0,0.0,0.0,0.0,0.0,0.0,1.0,0.5");
}

TEST(EmitJson, StableKeyOrder) {
  ordered_json doc{{"zeta", 1.0}, {"alpha", ordered_json::array({1, 2})}, {"flag", true}, {"name", "x"}};
  const std::string s = emit_json(doc);
  EXPECT_LT(s.find("zeta"), s.find("alpha"));
  EXPECT_NE(s.find("1.0"), std::string::npos);
  EXPECT_EQ(s, emit_json(doc));
  EXPECT_TRUE(ordered_json::accept(s));
}

TEST(ParseConfig, DefaultsAndOverrides) {
  const auto cfg = config_from(kEvolve);
  EXPECT_EQ(cfg.kind, ScenarioKind::Evolve);
  EXPECT_EQ(cfg.hbar, 1.0);
  EXPECT_EQ(cfg.tolerance, kDefaultTolerance);
  const auto over = config_from(kEvolve, ScenarioKind::Evolve, RunOptions{2.0, 1e-6, true, 5});
  EXPECT_EQ(over.hbar, 2.0);
  EXPECT_EQ(over.tolerance, 1e-6);
  EXPECT_TRUE(over.degrees);
  EXPECT_EQ(over.seed, 5u);
}

TEST(ParseConfig, SchemaViolations) {
  EXPECT_THROW(config_from(kEvolve, ScenarioKind::Mueller), SchemaError);
  EXPECT_THROW(config_from(R"({"kind": "evolve"})"), SchemaError);
  EXPECT_THROW(config_from(R"({"kind": "nope", "parameters": {}})"), SchemaError);
  EXPECT_THROW(config_from(R"({"kind": "evolve", "parameters": {}, "extra": 1})"), SchemaError);
  EXPECT_THROW(config_from(R"({"kind": "evolve", "parameters": {}, "hbar": -1})"), SchemaError);
  EXPECT_THROW(run(config_from(R"({"kind": "evolve", "parameters": {"a": [1, 0]}})")), SchemaError);
  EXPECT_THROW(run(config_from(R"({"kind": "evolve", "parameters": {"a": [1, 0], "b": [0, 1], "energy": 1,
    "colour": 3}})")),
               SchemaError);
  EXPECT_THROW(run(config_from(R"({"kind": "optimize-coherence", "parameters": {"j": {"jxx": 1, "jyy": 1, "jxy": 5}}})")),
               SchemaError);
  EXPECT_THROW(run(config_from(R"({"kind": "mueller", "parameters": {"rotator": 0.1, "jones": [[1, 0], [0, 1]]}})")),
               SchemaError);
}

TEST(Run, EvolveTrajectoryReachesTarget) {
  const auto res = run(config_from(kEvolve));
  ASSERT_EQ(res.table.rows.size(), 101u);
  EXPECT_EQ(res.table.header, trajectory_header());
  const double fid = std::get<double>(res.table.rows.back().back());
  EXPECT_GE(fid, 1.0 - 1e-9);
  EXPECT_NEAR(res.document["t_min"].get<double>(), pi / 2.0, 1e-12);
  EXPECT_EQ(res.document["version"], kVersion);
  const double eta = res.document["efficiency"]["eta_qm"].get<double>();
  EXPECT_NEAR(eta, 1.0, 1e-6);
}

TEST(Run, EvolveUncertaintyRouteAndHbar) {
  auto cfg = config_from(R"({"kind": "evolve", "hbar": 2.0, "parameters": {"a": [1, 0], "b": [0, 1], "energy": 0.5,
    "route": "uncertainty_maximization", "samples": 11}})");
  const auto res = run(cfg);
  EXPECT_NEAR(res.document["t_min"].get<double>(), 2.0 * (pi / 2.0) / 0.5, 1e-12);
  EXPECT_EQ(res.table.rows.size(), 11u);
}

TEST(Run, OptimizeCoherenceWorkedExample) {
  const auto res = run(config_from(kOptimize));
  EXPECT_NEAR(res.document["rotation"]["phi_opt"].get<double>(), -0.3926991, 1e-7);
  EXPECT_NEAR(res.document["rotation"]["j_after"].get<double>(), 0.7071068, 1e-7);
  EXPECT_NE(emit_json(res.document).find("\"phi_opt\": -0.39269908169872414"), std::string::npos);
}

TEST(Run, MuellerSources) {
  const auto jones = run(config_from(R"({"kind": "mueller", "parameters": {"jones": [[[0, 1], 0], [0, [0, -1]]]}})"));
  EXPECT_EQ(jones.document["classification"], "nondepolarizing");
  EXPECT_TRUE(jones.document["unitary"].get<bool>());
  const auto rot = run(config_from(R"({"kind": "mueller", "degrees": true, "parameters": {"rotator": 45}})"));
  EXPECT_NEAR(rot.document["mueller"][1][2].get<double>(), 1.0, 1e-15);
  const auto dep = run(config_from(
      R"({"kind": "mueller", "parameters": {"mueller": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}})"));
  EXPECT_EQ(dep.document["classification"], "depolarizing");
  EXPECT_EQ(dep.table.rows.size(), 4u);
}

TEST(Run, InterferenceSweep) {
  const auto res = run(config_from(R"({"kind": "interference", "parameters": {"j": {"jxx": 3, "jyy": 1, "jxy": 1},
    "theta": {"start": 0, "stop": 1.5707963267948966, "count": 5}, "epsilon": 0}})"));
  ASSERT_EQ(res.table.rows.size(), 5u);
  EXPECT_NEAR(std::get<double>(res.table.rows[2][4]), 3.0, 1e-12);
}

TEST(Run, CorrespondenceReportRows) {
  const auto res = run(config_from(kCorrespondence));
  EXPECT_EQ(res.document["rows"].size(), 6u);
  EXPECT_TRUE(res.document["all_pass"].get<bool>());
  const auto half = run(config_from(R"({"kind": "correspondence", "parameters": {
    "quantum": {"a": [1, 0], "b": [0.7071067811865476, 0.7071067811865476], "energy": 1.0},
    "optical": {"j": {"jxx": 3, "jyy": 1, "jxy": 1}, "phi": -0.19634954084936207}}})"));
  EXPECT_FALSE(half.document["all_pass"].get<bool>());
}

TEST(Run, DeterministicOutput) {
  for (const char* text : {kEvolve, kOptimize, kCorrespondence}) {
    const auto a = run(config_from(text));
    const auto b = run(config_from(text));
    EXPECT_EQ(emit_json(a.document), emit_json(b.document));
    EXPECT_EQ(emit_csv(a.table), emit_csv(b.table));
  }
}

TEST(RunBatch, KeepsOrderAndMatchesSequential) {
  std::vector<ScenarioConfig> cfgs{config_from(kEvolve), config_from(kOptimize), config_from(kCorrespondence)};
  const auto results = run_batch(cfgs);
  ASSERT_EQ(results.size(), 3u);
  for (std::size_t i = 0; i < cfgs.size(); ++i) EXPECT_EQ(emit_json(results[i].document), emit_json(run(cfgs[i]).document));
}

TEST_F(CliTest, EvolveCsvEndsAtTarget) {
  const auto cfg = write("evolve.json", kEvolve);
  const auto out = dir_ / "out.csv";
  ASSERT_EQ(cli("evolve --config \"" + cfg.string() + "\" --format csv --output \"" + out.string() + "\""), 0);
  const auto l = lines(slurp(out));
  ASSERT_EQ(l.size(), 102u);
  EXPECT_EQ(l[0], "t,re_c0,im_c0,re_c1,im_c1,bx,by,bz,fidelity");
  const double fid = std::stod(l.back().substr(l.back().rfind(',') + 1));
  EXPECT_GE(fid, 1.0 - 1e-9);
}

TEST_F(CliTest, OptimizeJsonFromStdinIsByteIdentical) {
  const auto cfg = write("opt.json", kOptimize);
  const auto o1 = dir_ / "o1.json";
  const auto o2 = dir_ / "o2.json";
  ASSERT_EQ(cli("optimize-coherence --output \"" + o1.string() + "\" < \"" + cfg.string() + "\""), 0);
  ASSERT_EQ(cli("optimize-coherence --config \"" + cfg.string() + "\" --output \"" + o2.string() + "\""), 0);
  EXPECT_EQ(slurp(o1), slurp(o2));
  EXPECT_NE(slurp(o1).find("\"version\": \"" + std::string(kVersion) + "\""), std::string::npos);
}

TEST_F(CliTest, MalformedJsonIsSchemaErrorWithoutOutput) {
  const auto cfg = write("bad.json", "{\"kind\": \"evolve\", ");
  const auto out = dir_ / "never.json";
  EXPECT_EQ(cli("evolve --config \"" + cfg.string() + "\" --output \"" + out.string() + "\""), 2);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("schema"), std::string::npos);
}

TEST_F(CliTest, FieldLevelSchemaMessage) {
  const auto cfg = write("bad.json", R"({"parameters": {"a": [1, 0], "b": [0, 1], "energy": -1}})");
  EXPECT_EQ(cli("evolve --config \"" + cfg.string() + "\""), 2);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("parameters.energy"), std::string::npos);
}

TEST_F(CliTest, GateFailureHasDistinctExitCode) {
  const auto cfg = write("evolve.json", kEvolve);
  const auto out = dir_ / "never.csv";
  EXPECT_EQ(cli("evolve --config \"" + cfg.string() + "\" --tolerance 1e-300 --output \"" + out.string() + "\""), 3);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, IoErrors) {
  const auto cfg = write("evolve.json", kEvolve);
  EXPECT_EQ(cli("evolve --config \"" + (dir_ / "missing.json").string() + "\""), 4);
  EXPECT_EQ(cli("evolve --config \"" + cfg.string() + "\" --output \"" + (dir_ / "no" / "such" / "x.json").string() + "\""),
            4);
}

TEST_F(CliTest, BadArgumentsAndKindMismatch) {
  const auto cfg = write("evolve.json", kEvolve);
  EXPECT_EQ(cli("evolve --config \"" + cfg.string() + "\" --format xml"), 2);
  EXPECT_EQ(cli("mueller --config \"" + cfg.string() + "\""), 2);
  EXPECT_EQ(cli("--help > /dev/null"), 0);
}

TEST_F(CliTest, BatchCsvHasScenarioColumn) {
  const auto cfg = write("batch.json", std::string("[") + kOptimize + "," + kOptimize + "]");
  const auto out = dir_ / "batch.csv";
  ASSERT_EQ(cli("optimize-coherence --config \"" + cfg.string() + "\" --format csv --output \"" + out.string() + "\""), 0);
  const auto l = lines(slurp(out));
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0].rfind("scenario,phi_opt", 0), 0u);
  EXPECT_EQ(l[1].rfind("0,", 0), 0u);
  EXPECT_EQ(l[2].rfind("1,", 0), 0u);
}

TEST(SampleConfigs, AllRunCleanly) {
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(QPOL_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    SCOPED_TRACE(entry.path().string());
    const ordered_json root = ordered_json::parse(slurp(entry.path()));
    std::vector<ScenarioConfig> cfgs;
    if (root.is_array()) {
      for (const auto& item : root) cfgs.push_back(parse_config(item, ScenarioKind::OptimizeCoherence));
    } else {
      cfgs.push_back(parse_config(root, std::nullopt));
    }
    EXPECT_NO_THROW((void)run_batch(cfgs));
  }
  EXPECT_GE(seen, 5u);
}
