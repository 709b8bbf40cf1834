#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

std::string binary_path() {
  const char* path = std::getenv("PWORLDS_BIN");
  REQUIRE_MESSAGE(path != nullptr, "PWORLDS_BIN must point at the pworlds binary");
  return path;
}

struct RunResult {
  int exit_code = -1;
  std::string output; // stdout and stderr combined
};

RunResult run(const std::string& args) {
  std::string command = binary_path() + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe))
    result.output.append(buffer, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class TempDir {
public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           fs::path("pworlds_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string write(const std::string& name, const std::string& content) {
    fs::path p = dir_ / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }

private:
  fs::path dir_;
};

std::string last_line(const std::string& text) {
  auto end = text.find_last_not_of('\n');
  if (end == std::string::npos) return "";
  auto begin = text.rfind('\n', end);
  return text.substr(begin == std::string::npos ? 0 : begin + 1,
                     end - (begin == std::string::npos ? 0 : begin + 1) + 1);
}

const char* kPropKb = "predicates: A/0, B/0\n";

const char* kWorkedDist =
    "P(A & B) = 1/2\n"
    "P(A & ~B) = 1/10\n"
    "P(~A & B) = 1/5\n"
    "P(~A & ~B) = 1/5\n";

} // namespace

TEST_CASE("eval reproduces the worked atom-probability example") {
  TempDir tmp;
  std::string kb = tmp.write("prop.kb", kPropKb);
  std::string dist = tmp.write("worked.dist", kWorkedDist);

  RunResult r = run("eval --kb " + kb + " --dist " + dist + " --query 'A | B'");
  CHECK(r.exit_code == 0);
  CHECK(last_line(r.output) == "4/5 (= 0.8)");

  RunResult taut = run("eval --kb " + kb + " --dist " + dist + " --query 'true'");
  CHECK(last_line(taut.output) == "1");

  RunResult contradiction =
      run("eval --kb " + kb + " --dist " + dist + " --query 'A & ~A'");
  CHECK(last_line(contradiction.output) == "0");
}

TEST_CASE("eval output is deterministic byte for byte") {
  TempDir tmp;
  std::string kb = tmp.write("prop.kb", kPropKb);
  std::string dist = tmp.write("worked.dist", kWorkedDist);
  std::string args = "eval --kb " + kb + " --dist " + dist + " --query 'A | B' --explain";
  RunResult first = run(args);
  RunResult second = run(args);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(first.output.find("world 3: A=t B=t") != std::string::npos);
}

TEST_CASE("bounds reproduces the implication example and the vacuous case") {
  TempDir tmp;
  std::string kb = tmp.write("kb.kb",
                             "predicates: A/0, B/0\n"
                             "P(A) = 1/2\n"
                             "P(A -> B) = 3/4\n");
  RunResult r = run("bounds --kb " + kb + " --query B");
  CHECK(r.exit_code == 0);
  CHECK(last_line(r.output) == "[1/4, 3/4]");

  std::string empty = tmp.write("empty.kb", kPropKb);
  RunResult vacuous = run("bounds --kb " + empty + " --query A");
  CHECK(vacuous.exit_code == 0);
  CHECK(last_line(vacuous.output) == "[0, 1]");
}

TEST_CASE("bounds on an inconsistent KB exits 4 and names the clash") {
  TempDir tmp;
  std::string kb = tmp.write("bad.kb",
                             "predicates: A/0\n"
                             "P(A) = 3/10\n"
                             "P(A) = 6/10\n");
  RunResult r = run("bounds --kb " + kb + " --query A");
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("P(A) = 3/10") != std::string::npos);
  CHECK(r.output.find("line 2") != std::string::npos);
  CHECK(r.output.find("line 3") != std::string::npos);
}

TEST_CASE("consistent reports the exception KB as INCONSISTENT") {
  TempDir tmp;
  std::string kb = tmp.write("exception.kb",
                             "domain: c\n"
                             "predicates: Bird/1, Fly/1\n"
                             "P(Fly(c) | Bird(c)) >= 9/10\n"
                             "P(Bird(c)) >= 9/10\n"
                             "P(Fly(c)) <= 1/10\n");
  RunResult r = run("consistent --kb " + kb);
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("INCONSISTENT") != std::string::npos);
  CHECK(r.output.find("note:") != std::string::npos);

  std::string relaxed = tmp.write("relaxed.kb",
                                  "domain: c\n"
                                  "predicates: Bird/1, Fly/1\n"
                                  "P(Fly(c) | Bird(c)) >= 9/10\n"
                                  "P(Bird(c)) >= 9/10\n"
                                  "P(Fly(c)) <= 81/100\n");
  RunResult ok = run("consistent --kb " + relaxed + " --explain");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("INCONSISTENT") == std::string::npos);
  CHECK(ok.output.find("CONSISTENT") != std::string::npos);
  CHECK(ok.output.find("witness") != std::string::npos);
}

TEST_CASE("anomaly emits the expected row and csv") {
  RunResult r = run("anomaly --epsilon 1/100 --terms 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("1/99") != std::string::npos);
  CHECK(r.output.find("50/99") != std::string::npos);

  RunResult csv = run("anomaly --epsilon 1/100 --terms 1 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.find("epsilon,n,per_term_max,chain_bound,existential_max,"
                        "union_ceiling") != std::string::npos);
  CHECK(csv.output.find("1/100,1,1/99,50/99,1/99,1/99") != std::string::npos);
}

TEST_CASE("gaifman passes on the uniform distribution") {
  TempDir tmp;
  std::string kb = tmp.write("unary.kb",
                             "domain: t1, t2\n"
                             "predicates: P/1\n");
  RunResult r = run("gaifman --kb " + kb + " --query 'exists x. P(x)'");
  CHECK(r.exit_code == 0);
  CHECK(last_line(r.output) == "PASS");
  CHECK(r.output.find("3/4") != std::string::npos);
  CHECK(r.output.find("instance t1: 1/2") != std::string::npos);

  // quantifier-free queries are an invariant violation
  RunResult bad = run("gaifman --kb " + kb + " --query 'P(t1)'");
  CHECK(bad.exit_code == 3);
}

TEST_CASE("exit codes distinguish parse, invariant, and cap errors") {
  TempDir tmp;
  std::string bad_kb = tmp.write("syntax.kb",
                                 "predicates: A/0\n"
                                 "P(A & | B) = 1\n");
  RunResult parse_error = run("consistent --kb " + bad_kb);
  CHECK(parse_error.exit_code == 2);
  CHECK(parse_error.output.find("line 2") != std::string::npos);

  std::string prop = tmp.write("prop.kb", kPropKb);
  std::string bad_dist = tmp.write("bad.dist", "w 0 1/2\nw 1 1/3\n");
  RunResult invariant = run("eval --kb " + prop + " --dist " + bad_dist + " --query A");
  CHECK(invariant.exit_code == 3); // well-formed file, invalid distribution

  std::string three = tmp.write("three.kb",
                                "domain: t1\n"
                                "predicates: Bird/1, Fly/1, Penguin/1\n");
  RunResult capped = run("consistent --kb " + three + " --max-atoms 2");
  CHECK(capped.exit_code == 5);
  CHECK(capped.output.find("cap") != std::string::npos);

  RunResult usage = run("bogus-subcommand");
  CHECK(usage.exit_code == 1);
}

TEST_CASE("quantified queries are expanded over the domain") {
  TempDir tmp;
  std::string kb = tmp.write("unary.kb",
                             "domain: t1, t2\n"
                             "predicates: P/1\n");
  std::string dist = tmp.write("u.dist",
                               "w 0 1/4\nw 1 1/4\nw 2 1/4\nw 3 1/4\n");
  RunResult r = run("eval --kb " + kb + " --dist " + dist +
                    " --query 'exists x. P(x)' --explain");
  CHECK(r.exit_code == 0);
  CHECK(last_line(r.output) == "3/4 (= 0.75)");
  CHECK(r.output.find("query expands to: P(t1) | P(t2)") != std::string::npos);
}

TEST_CASE("require-positive-conditions tightens the conditional reading") {
  TempDir tmp;
  std::string kb = tmp.write("vacuous.kb",
                             "predicates: A/0, B/0\n"
                             "P(A | B) >= 1\n"
                             "P(~A | B) >= 1\n");
  RunResult vacuous = run("consistent --kb " + kb);
  CHECK(vacuous.exit_code == 0);

  RunResult strict = run("consistent --kb " + kb + " --require-positive-conditions 1/10");
  CHECK(strict.exit_code == 4);
}

TEST_CASE("gaifman accepts an explicit distribution") {
  TempDir tmp;
  std::string kb = tmp.write("unary.kb",
                             "domain: t1, t2\n"
                             "predicates: P/1\n");
  // all mass on the world where only P(t1) holds
  std::string dist = tmp.write("point.dist", "w 1 1\n");
  RunResult r = run("gaifman --kb " + kb + " --dist " + dist +
                    " --query 'forall x. P(x)'");
  CHECK(r.exit_code == 0);
  CHECK(last_line(r.output) == "PASS");
  CHECK(r.output.find("p[forall x. P(x)] = 0") != std::string::npos);
  CHECK(r.output.find("instance t1: 1") != std::string::npos);
  CHECK(r.output.find("instance t2: 0") != std::string::npos);
}

TEST_CASE("bounds --explain prints witnesses and derived facts") {
  TempDir tmp;
  std::string kb = tmp.write("uni.kb",
                             "domain: t1\n"
                             "predicates: Penguin/1, Bird/1\n"
                             "P(forall x. Penguin(x) -> Bird(x)) = 1\n");
  RunResult r = run("bounds --kb " + kb + " --query 'Bird(t1)' --explain");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("derived:") != std::string::npos);
  CHECK(r.output.find("lo witness") != std::string::npos);
  CHECK(r.output.find("hi witness") != std::string::npos);
  CHECK(last_line(r.output) == "[0, 1]");
}
