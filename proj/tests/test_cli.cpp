// Drives the installed binary (path in RESTLAB_BIN) through a shell, the same
// way a user would: exit codes, CSV schemas, provenance round-trip,
// determinism, and the flagged-run path.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string bin() {
  const char* b = std::getenv("RESTLAB_BIN");
  REQUIRE_MESSAGE(b != nullptr, "RESTLAB_BIN must point at the cli binary");
  return b;
}

int run_cli(const std::string& args) {
  const std::string cmd = "'" + bin() + "' " + args + " >cli_stdout.txt 2>cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE_MESSAGE(f.good(), "missing file: ", path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string config_line(const std::string& csv) {
  const std::string key = "# config: ";
  const size_t at = csv.find(key);
  REQUIRE(at != std::string::npos);
  const size_t end = csv.find('\n', at);
  return csv.substr(at + key.size(), end - at - key.size());
}

}  // namespace

TEST_CASE("region: single query, schema, exit code") {
  CHECK(run_cli("region --d 3 --q 5 --alpha 5 --out cli_region.csv") == 0);
  const std::string csv = slurp("cli_region.csv");
  CHECK(contains(csv, "d,q,alpha,verdict,reason"));
  CHECK(contains(csv, "3,5,5,VALID,"));
  CHECK(contains(csv, "# experiment: region"));

  CHECK(run_cli("region --d 3 --q 3 --alpha inf --out cli_region_inf.csv") == 0);
  CHECK(contains(slurp("cli_region_inf.csv"), "3,3,inf,VALID,"));

  CHECK(run_cli("region --d 3 --q 5 --alpha 4 --out cli_region_f.csv") == 0);
  CHECK(contains(slurp("cli_region_f.csv"), "FAIL"));
}

TEST_CASE("config errors exit 2 and name the offender") {
  CHECK(run_cli("region --q -1 --alpha 5") == 2);
  CHECK(contains(slurp("cli_stderr.txt"), "q"));

  CHECK(run_cli("region --d 3 --q 5") == 2);
  CHECK(contains(slurp("cli_stderr.txt"), "alpha"));

  std::ofstream("cli_bad.json") << "{\"K\":256,\"oops\":1}\n";
  CHECK(run_cli("decay --config cli_bad.json") == 2);
  CHECK(contains(slurp("cli_stderr.txt"), "oops"));

  std::ofstream("cli_badtype.json") << "{\"K\":\"many\"}\n";
  CHECK(run_cli("decay --config cli_badtype.json") == 2);
  CHECK(contains(slurp("cli_stderr.txt"), "K"));

  CHECK(run_cli("decay --no-such-flag 1") == 2);
  CHECK(run_cli("no-such-experiment") == 2);
  // module preconditions surface as config errors too
  CHECK(run_cli("decay --surface circle --K 256 --k_max 9") == 2);
}

TEST_CASE("decay: schema, determinism, provenance round-trip") {
  CHECK(run_cli("decay --surface circle --K 256 --out cli_d1.csv") == 0);
  const std::string first = slurp("cli_d1.csv");
  CHECK(contains(first, "r,rms_value,fit_slope,fit_stderr"));
  CHECK(contains(first, "# fitted: decay_slope"));

  CHECK(run_cli("decay --surface circle --K 256 --out cli_d2.csv") == 0);
  CHECK(first == slurp("cli_d2.csv"));  // byte-identical for identical config

  // the echoed config reproduces the run through --config alone
  std::ofstream("cli_echo.json") << config_line(first) << "\n";
  CHECK(run_cli("decay --config cli_echo.json --out cli_d3.csv") == 0);
  CHECK(first == slurp("cli_d3.csv"));
}

TEST_CASE("flags override config file values") {
  std::ofstream("cli_k.json") << "{\"K\":256}\n";
  CHECK(run_cli("decay --config cli_k.json --K 512 --out cli_d4.csv") == 0);
  CHECK(contains(config_line(slurp("cli_d4.csv")), "\"K\":512"));
}

TEST_CASE("emit-plot writes a gnuplot sibling referencing the csv") {
  CHECK(run_cli("decay --surface circle --K 256 --out cli_p.csv --emit-plot") == 0);
  const std::string gp = slurp("cli_p.gp");
  CHECK(contains(gp, "plot \"cli_p.csv\""));
  CHECK(contains(gp, "set logscale y"));
  CHECK(!contains(gp, "set terminal"));  // a script, never an image

  CHECK(run_cli("region --d 3 --q 5 --alpha 5 --out cli_rb.csv --emit-plot") == 0);
  const std::string rgp = slurp("cli_rb.gp");
  CHECK(contains(rgp, "$overlay"));  // the valid-region boundary polyline
  CHECK(contains(rgp, "0.25 0.25"));
}

TEST_CASE("flagged run writes the csv and exits 3") {
  CHECK(run_cli("orthonormal --K 256 --box_radius 5 --dr 0.01 --M_list 8 "
                "--out cli_flag.csv") == 3);
  CHECK(contains(slurp("cli_flag.csv"), "# flag: boundary mass"));
  CHECK(contains(slurp("cli_stderr.txt"), "flagged"));
}

TEST_CASE("region sweep emits the full grid") {
  // the q and alpha lattices are chosen to contain (3.5, 7), a point exactly
  // on the open boundary alpha = q/(q-3)
  CHECK(run_cli("region --d 3 --sweep --points 26 --q_min 3.5 --q_max 7.5 "
                "--alpha_min 1 --alpha_max 26 --out cli_sweep.csv") == 0);
  const std::string csv = slurp("cli_sweep.csv");
  int rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows > 26 * 26);  // provenance + header + 676 data rows
  CHECK(contains(csv, "VALID"));
  CHECK(contains(csv, "FAIL"));
  CHECK(contains(csv, "OPEN"));
}

TEST_CASE("small end-to-end runs for every remaining subcommand") {
  CHECK(run_cli("schatten-scan --out cli_ss.csv") == 0);
  CHECK(contains(slurp("cli_ss.csv"), "K,mu_max,s1,s2,s4,rank_effective"));

  CHECK(run_cli("semiclassical --K 512 --h_list 0.5,0.25,0.05 --out cli_sc.csv") == 0);
  CHECK(contains(slurp("cli_sc.csv"), "h,max_ev,count,s1,s2,s_alpha,s_inf"));

  CHECK(run_cli("noncompact --n 768 --L 96 --window 16 --max_shift 4 --out cli_nc.csv") == 0);
  CHECK(contains(slurp("cli_nc.csv"), "n,probe_value,contrast_value"));

  CHECK(run_cli("translate-scaling --n 128 --L 16 --dt 0.0625 --copies 2 "
                "--T_schedule 1,2 --out cli_ts.csv") == 0);
  CHECK(contains(slurp("cli_ts.csv"),
                 "N,T,tr_gamma_m,diag_prediction,remainder,remainder_ratio,v_norm"));

  CHECK(run_cli("decoupling --n 128 --L 16 --dt 0.0625 --t_list 0,1,2 --out cli_dc.csv") == 0);
  CHECK(contains(slurp("cli_dc.csv"), "t,norm,ratio"));

  CHECK(run_cli("orthonormal --K 256 --box_radius 60 --M_list 1,2,4,8 --out cli_on.csv") == 0);
  CHECK(contains(slurp("cli_on.csv"), "M,lhs,coef_bound,triangle_bound,boundary_fraction"));

  CHECK(run_cli("refined --n 128 --trials 3 --band 2 --window 1 --dt 0.05 "
                "--out cli_rf.csv") == 0);
  CHECK(contains(slurp("cli_rf.csv"), "trial,lhs,rhs1,rhs2,ratio"));
  CHECK(contains(slurp("cli_rf.csv"), "# seed: 7"));
}
