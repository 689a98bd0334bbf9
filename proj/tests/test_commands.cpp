#include <flatendo/commands.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "corpus_util.hpp"
#include "test_util.hpp"

using namespace flatendo;
using namespace flatendo::testing;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("flatendo_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name) << content;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

const VerifyCheck* find_check(const VerifyReport& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}

// Copies the corpus, applies edit to the expectations, and reruns the verifier.
VerifyReport verify_perturbed(const std::function<void(io::json&)>& edit) {
  TempDir dir;
  for (const auto& entry : fs::directory_iterator(FLATENDO_CORPUS_DIR)) fs::copy(entry.path(), dir.path());
  io::json e = io::read_json_file((dir.path() / "expectations.json").string());
  edit(e);
  std::ofstream(dir.path() / "expectations.json") << e.dump(1);
  return paper_verify(dir.path());
}

}  // namespace

TEST(Commands, ExitCodesForBadInput) {
  TempDir dir;
  std::string klein = corpus_path("klein.json"), alpha = corpus_path("klein_alpha.json");
  EXPECT_EQ(cmd_validate((dir.path() / "missing.json").string()).exit_code, exit_input);
  EXPECT_EQ(cmd_validate(dir.write("bad.json", "{\"dimension\": 2, \"generators\": [")).exit_code, exit_input);
  EXPECT_EQ(cmd_validate(dir.write("nogens.json", "{\"dimension\": 2}")).exit_code, exit_input);
  EXPECT_EQ(cmd_validate(dir.write("rank.json", R"({"dimension": 2, "lattice": [["1","0"],["2","0"]], "generators": []})"))
                .exit_code,
            exit_input);
  EXPECT_EQ(cmd_check_endo(klein, corpus_path("hw_phi.json")).exit_code, exit_input);  // dimension mismatch
  CommandOptions mod1;
  mod1.quotient = "mod:1";
  EXPECT_EQ(cmd_quotient(klein, mod1).exit_code, exit_input);
  CommandOptions ab;
  ab.quotient = "ab";
  EXPECT_EQ(cmd_obstruct(klein, alpha, ab).exit_code, exit_input);  // infinite quotient
  CommandOptions zero;
  zero.bound = 0;
  zero.quotient = "mod:4";
  EXPECT_EQ(cmd_obstruct(klein, alpha, zero).exit_code, exit_input);
  EXPECT_EQ(cmd_orbit_eq(klein, "1/3", "0,0").exit_code, exit_input);
  EXPECT_EQ(cmd_classify(dir.write("sing.json", R"({"translation": ["0","0"], "linear": [["1","1"],["1","1"]]})"))
                .exit_code,
            exit_input);
}

TEST(Commands, SuccessfulCommands) {
  std::string klein = corpus_path("klein.json"), hw = corpus_path("hantzsche_wendt.json");
  auto v = cmd_validate(klein);
  EXPECT_EQ(v.exit_code, exit_ok);
  EXPECT_TRUE(v.report.at("torsion_free").get<bool>());
  // Torsion is a finding, not an input error.
  auto t = cmd_validate(corpus_path("klein_torsion.json"));
  EXPECT_EQ(t.exit_code, exit_ok);
  EXPECT_FALSE(t.report.at("torsion_free").get<bool>());
  EXPECT_FALSE(t.report.at("torsion_witness").is_null());

  auto c = cmd_check_endo(hw, corpus_path("hw_phi.json"));
  ASSERT_EQ(c.exit_code, exit_ok);
  EXPECT_FALSE(c.report.at("induces").get<bool>());
  EXPECT_TRUE(c.report.contains("well_defined_witness"));

  auto r = cmd_realize(klein, corpus_path("klein_psi.json"));
  ASSERT_EQ(r.exit_code, exit_ok);
  EXPECT_TRUE(r.report.at("realizable").get<bool>());
  EXPECT_EQ(r.report.at("map").at("translation"), (io::json{"1/2", "0"}));

  auto l = cmd_linearize(klein, corpus_path("klein_alpha.json"));
  ASSERT_EQ(l.exit_code, exit_ok);
  EXPECT_EQ(l.report.at("fixed_point"), (io::json{"-1/4", "0"}));

  auto o = cmd_orbit_eq(klein, "1/3,1/4", "-1/3,3/4");
  EXPECT_EQ(o.exit_code, exit_ok);
  EXPECT_NE(o.text.find("same orbit"), std::string::npos);

  CommandOptions m4;
  m4.quotient = "mod:4";
  m4.bound = 3;
  auto ob = cmd_obstruct(klein, corpus_path("klein_alpha.json"), m4);
  ASSERT_EQ(ob.exit_code, exit_ok);
  EXPECT_TRUE(ob.report.at("intertwiner_found").is_null());
  EXPECT_EQ(ob.report.at("search_bounds").at("coefficient_bound"), 3);
}

TEST(Commands, DeterministicJson) {
  std::string hw = corpus_path("hantzsche_wendt.json");
  EXPECT_EQ(cmd_check_endo(hw, corpus_path("hw_phi.json")).render(true),
            cmd_check_endo(hw, corpus_path("hw_phi.json")).render(true));
  CommandOptions m4;
  m4.quotient = "mod:4";
  std::string klein = corpus_path("klein.json"), alpha = corpus_path("klein_alpha.json");
  EXPECT_EQ(cmd_obstruct(klein, alpha, m4).render(true), cmd_obstruct(klein, alpha, m4).render(true));
  EXPECT_EQ(cmd_abelianize(corpus_path("dim4_anosov.json")).render(true),
            cmd_abelianize(corpus_path("dim4_anosov.json")).render(true));
}

TEST(Io, GroupSpecRoundTrip) {
  for (const char* name : {"klein.json", "hantzsche_wendt.json", "dim4_anosov.json", "klein_torsion.json"}) {
    auto spec = io::read_group_spec(corpus_path(name));
    io::json j = io::to_json(spec);
    auto again = io::group_spec_from_json(io::json::parse(j.dump()));
    EXPECT_EQ(again.lattice, spec.lattice) << name;
    EXPECT_EQ(again.names, spec.names) << name;
    ASSERT_EQ(again.generators.size(), spec.generators.size()) << name;
    for (std::size_t i = 0; i < spec.generators.size(); ++i) EXPECT_EQ(again.generators[i], spec.generators[i]) << name;
    EXPECT_EQ(io::canonical_json(io::build_group(again)), io::canonical_json(io::build_group(spec))) << name;
  }
}

TEST(Io, AffineMapRoundTrip) {
  Gen gen(11);
  for (int i = 0; i < 50; ++i) {
    std::size_t n = gen.integer(1, 4);
    RatMatrix m = gen.rat_matrix(n, n);
    if (determinant(m) == 0) continue;
    AffineMap f(gen.rat_vector(n), m);
    EXPECT_EQ(io::affine_from_json(io::json::parse(io::to_json(f).dump())), f);
  }
}

TEST(ExampleVerification, PristineCorpusPasses) {
  auto r = cmd_paper_verify();
  EXPECT_EQ(r.exit_code, exit_ok) << r.text;
  EXPECT_TRUE(r.report.at("all_passed").get<bool>());
  EXPECT_GE(r.report.at("checks").size(), 40u);
}

TEST(ExampleVerification, PerturbedMatrixIsCaught) {
  VerifyReport r = verify_perturbed([](io::json& e) { e["anosov"]["M_alpha"]["matrix"][0][2] = "0"; });
  EXPECT_FALSE(r.all_passed());
  const VerifyCheck* c = find_check(r, "anosov.M_alpha");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
  EXPECT_TRUE(find_check(r, "anosov.quotient")->passed);
}

TEST(ExampleVerification, PerturbedWitnessIsCaught) {
  VerifyReport r = verify_perturbed([](io::json& e) { e["franks"]["witness"]["point"] = io::json{"0", "0", "0"}; });
  EXPECT_FALSE(r.all_passed());
  bool witness_failed = false;
  for (const auto& c : r.checks)
    if (c.id.rfind("franks.witness.", 0) == 0 && !c.passed) witness_failed = true;
  EXPECT_TRUE(witness_failed);
  EXPECT_TRUE(find_check(r, "auslander.conjugate")->passed);
}

TEST(ExampleVerification, MissingCorpusIsInputError) {
  CommandOptions opt;
  opt.corpus_dir = "/nonexistent/flatendo";
  EXPECT_EQ(cmd_paper_verify(opt).exit_code, exit_input);
}
