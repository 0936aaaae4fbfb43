#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run cli(const std::vector<std::string>& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + quote(QWREATH_CLI_PATH);
  for (auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string firstLine(const std::string& s) { return s.substr(0, s.find('\n')); }

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("mul and normal-form") {
  auto sq = cli({"mul", "H1", "H1"});
  CHECK(sq.code == 0);
  CHECK(firstLine(sq.out) == "(q - 1)*H[s1] + q");

  auto deg = cli({"mul", "H1", "(X⊗1)", "--instance", "degenerate"});
  CHECK(firstLine(deg.out) == "(1⊗X)*H[s1] - 1");
  CHECK(firstLine(cli({"normal-form", "(1⊗X)*H1 - 1", "--instance", "degenerate", "--left"}).out) == "H[s1]*(X⊗1)");

  CHECK(firstLine(cli({"normal-form", "1"}).out) == "1");
  CHECK(firstLine(cli({"normal-form", "H[s1 s2]", "-d", "3"}).out) == "H[s1 s2]");
  CHECK(firstLine(cli({"mul", "H1", "H2", "H1", "-d", "3"}).out) == firstLine(cli({"mul", "H2", "H1", "H2", "-d", "3"}).out));
}

TEST_CASE("hu subcommands") {
  CHECK(firstLine(cli({"hu", "b1", "-m", "1", "--dual-canonical"}).out) == "2*c[s1] + (v + v^-1)");
  CHECK(firstLine(cli({"hu", "b1", "-m", "1", "--canonical"}).out) == "2*b[s1] + (-v - v^-1)");
  CHECK(firstLine(cli({"hu", "h", "-m", "1", "--at", "v=1"}).out) == "2*T[w_{1,1}]");
  CHECK(firstLine(cli({"hu", "h", "-m", "2", "--at", "v=1"}).out) == "4*T[w_{2,2}]");
  CHECK(firstLine(cli({"hu", "h", "-m", "1"}).out) == "h_1 = v*(I[1] + I[~1])");

  auto z = cli({"hu", "z", "-m", "2"});
  CHECK(z.code == 0);
  CHECK(has(z.out, "I[3.1]: v^6*(q - 1)^2*(q^4 + 2*q^3 - 2*q^2 + 2*q + 1)"));
  CHECK(has(z.out, "I[1]: v^7*(q - 1)*(q^4 + 4*q^3 - 2*q^2 + 4*q + 1)"));
  CHECK(has(z.out, "I[3]: v^7*(q - 1)*(q^4 + 4*q^3 - 2*q^2 + 4*q + 1)"));
  CHECK(has(z.out, "1: 2*v^8*(q^4 + 4*q^3 - 2*q^2 + 4*q + 1)"));

  auto basis = cli({"--format", "json", "hu", "basis", "-m", "2"});
  auto j = nlohmann::json::parse(basis.out);
  CHECK(j["size"] == 8);
  CHECK(j["rank_at_q3"] == 8);
  CHECK(j["schema"] == 1);
  CHECK(cli({"--format", "latex-table", "hu", "basis", "-m", "1"}).out.rfind("\\begin{tabular}", 0) == 0);

  CHECK(cli({"hu", "member", "-m", "2", "H1*T1 + z"}).code == 0);
  CHECK(cli({"hu", "member", "-m", "2", "T2"}).code == 1);
  auto gen = cli({"hu", "gen", "-m", "1", "-d", "3"});
  CHECK(gen.code == 0);
  CHECK(has(gen.out, "holds"));
}

TEST_CASE("schur") {
  auto r = cli({"--format", "json", "schur", "--instance", "heckeA", "-n", "2", "-d", "2", "--prime", "auto", "--seed", "7"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "pass");
  CHECK(j["dim_commutant"] == 10);
  CHECK(j["dim_bicommutant"] == 2);
  CHECK(j["schema"] == 1);
  CHECK(j["points"].size() == 2);

  auto again = cli({"schur", "--instance", "heckeA", "-n", "2", "-d", "2", "--seed", "7", "--format", "json"});
  CHECK(again.out == r.out);
  CHECK(cli({"--format", "json", "schur", "--seed", "8"}).out != r.out);

  auto hu = cli({"--format", "json", "schur", "--instance", "hu", "-m", "2", "-n", "4"});
  CHECK(hu.code == 0);
  CHECK(nlohmann::json::parse(hu.out)["dim_bicommutant"] == 8);

  auto skipped = cli({"schur", "--instance", "heckeA", "-n", "1", "-d", "2"});
  CHECK(skipped.code == 3);
  CHECK(has(skipped.out, "verdict: skipped"));
  CHECK(has(skipped.out, "faithfulness"));
}

TEST_CASE("check, grand-loop and oracles") {
  auto hecke = cli({"check", "--instance", "hecke.toml", "-d", "3"});
  CHECK(hecke.code == 0);
  CHECK(has(hecke.out, "verdict: pass"));

  auto hu = cli({"check", "--instance", "hu.toml", "-m", "2"});
  CHECK(hu.code == 0);
  CHECK(has(hu.out, "only R = σ(R)"));

  auto bad = cli({"check", "--instance", "bad.toml"});
  CHECK(bad.code == 1);
  CHECK(has(bad.out, "witness"));
  auto badFile = cli({"check", "--instance", QWREATH_SOURCE_DIR "/instances/bad.json"});
  CHECK(badFile.code == 1);
  CHECK(cli({"check", "--instance", QWREATH_SOURCE_DIR "/instances/yokonuma-2.json"}).code == 0);
  CHECK(firstLine(cli({"mul", "H1", "(X⊗1)", "--instance", QWREATH_SOURCE_DIR "/instances/degenerate.json"}).out) ==
        "(1⊗X)*H[s1] - 1");

  CHECK(cli({"grand-loop", "--instance", "yokonuma", "-m", "2", "-d", "3"}).code == 0);
  CHECK(cli({"grand-loop", "--instance", "cyclic-3-inverting-sigma"}).code == 1);
  CHECK(cli({"oracle", "assoc", "--instance", "hu", "-m", "2"}).code == 0);
  CHECK(cli({"oracle", "assoc", "--instance", "ariki-koike", "-m", "2", "-d", "2"}).code == 0);
  CHECK(cli({"oracle", "hm-typeB", "-m", "2"}).code == 0);

  auto windowed = cli({"--format", "json", "check", "--instance", "degenerate"}, "QWREATH_WINDOW=6");
  CHECK(nlohmann::json::parse(windowed.out)["report"]["window"] == 6);
  CHECK(cli({"check", "--instance", "degenerate"}, "QWREATH_WINDOW=x").code == 2);
}

TEST_CASE("usage errors and acceptance commands") {
  CHECK(cli({"mul", "H1"}).code == 2);
  CHECK(cli({"check", "--instance", "no-such-instance"}).code == 2);
  CHECK(cli({"mul", "H1", "H7"}).code == 2);
  CHECK(cli({"--prime", "15", "schur"}).code == 2);
  CHECK(cli({"--format", "yaml", "mul", "H1", "H1"}).code == 2);

  auto a = cli({"--format", "json", "accept", "3"});
  CHECK(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["verdict"] == "pass");
}
