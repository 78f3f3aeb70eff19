// Copyright 2026 The qpolar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qpolar/cli.hpp"
#include "qpolar/linalg.hpp"
#include "qpolar/rng.hpp"

using namespace qpolar;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

// Value of `column` in the first data row.
double column(const std::string& csv, const std::string& name) {
  std::istringstream is(csv);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  std::istringstream hs(header), rs(row);
  std::string h, v;
  while (std::getline(hs, h, ',') && std::getline(rs, v, ','))
    if (h == name) return std::stod(v);
  throw std::runtime_error("missing column " + name);
}

struct Workspace {
  fs::path dir = fs::temp_directory_path() / "qpolar_cli_test";
  Workspace() { fs::create_directories(dir); }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("polar on the identity") {
    Workspace ws;
    write_matrix_file(ws.path("id.txt"), CMatrix::identity(2));
    write_matrix_file(ws.path("psi.txt"), CMatrix{{0.6}, {cplx{0.0, 0.8}}});
    const Result r = run({"polar", "--matrix", ws.path("id.txt"), "--state", ws.path("psi.txt"), "--eps", "1e-5"});
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("dims,alpha,kappa,degree,oaa_reps,encoder_uses,residual\n", 0) == 0);
    CHECK(column(r.out, "residual") <= 1e-9);
    CHECK(column(r.out, "kappa") == doctest::Approx(1.0));
  }

  TEST_CASE("pgm on an orthonormal ensemble") {
    Workspace ws;
    fs::create_directories(ws.dir / "ens");
    write_matrix_file(ws.path("ens/states.txt"), CMatrix::identity(2));
    {
      std::ofstream f(ws.dir / "ens" / "probs.txt");
      f << "0.5\n0.5\n";
    }
    write_matrix_file(ws.path("omega.txt"), CMatrix{{1.0}, {0.0}});
    const Result r = run({"pgm", "--ensemble", ws.path("ens"), "--omega", ws.path("omega.txt"), "--eps", "1e-2"});
    REQUIRE(r.status == 0);
    CHECK(column(r.out, "d_tv") <= 1e-2);
    CHECK(column(r.out, "r") == 2.0);
  }

  TEST_CASE("qsvt-phases writes a phase file") {
    Workspace ws;
    const Result r = run({"qsvt-phases", "--delta", "0.3", "--eps", "1e-3", "--out", ws.path("phases.txt")});
    REQUIRE(r.status == 0);
    std::ifstream f(ws.path("phases.txt"));
    int degree = 0;
    f >> degree;
    CHECK(degree == static_cast<int>(column(r.out, "degree")));
    CHECK(column(r.out, "grid_error") <= 1e-3);
    CHECK(column(r.out, "reconstruction_error") <= 1e-10);
  }

  TEST_CASE("--out redirects the report") {
    Workspace ws;
    const Result r = run({"--out", ws.path("report.csv"), "qsvt-phases", "--delta", "0.5", "--eps", "1e-2"});
    REQUIRE(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream f(ws.path("report.csv"));
    std::string header;
    std::getline(f, header);
    CHECK(header == "delta,eps,degree,grid_error,sup_norm,reconstruction_error,iterations");
  }

  TEST_CASE("configuration file supplies options") {
    Workspace ws;
    {
      std::ofstream f(ws.path("run.cfg"));
      f << "seed=5\n[qsvt-phases]\ndelta=0.5\neps=0.01\n";
    }
    const Result a = run({"--config", ws.path("run.cfg"), "qsvt-phases"});
    const Result b = run({"qsvt-phases", "--delta", "0.5", "--eps", "0.01"});
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("selftest passes") {
    const Result r = run({"selftest"});
    CHECK(r.status == 0);
    CHECK(r.out.find(",0\n") == std::string::npos);
  }

  TEST_CASE("seeded sampling is reproducible and the environment overrides the seed") {
    Workspace ws;
    fs::create_directories(ws.dir / "ens");
    write_matrix_file(ws.path("ens/states.txt"), CMatrix{{1.0, 0.6}, {0.0, 0.8}});
    {
      std::ofstream f(ws.dir / "ens" / "probs.txt");
      f << "0.5\n0.5\n";
    }
    write_matrix_file(ws.path("omega.txt"), CMatrix{{0.6}, {0.8}});
    const std::vector<std::string> args{"pgm",   "--ensemble", ws.path("ens"), "--omega", ws.path("omega.txt"),
                                        "--eps", "1e-2",       "--shots",      "500"};
    auto with_seed = [&](const std::string& seed) {
      std::vector<std::string> a{"--seed", seed};
      a.insert(a.end(), args.begin(), args.end());
      return run(a);
    };
    const Result s1 = with_seed("1"), s1b = with_seed("1"), s2 = with_seed("2");
    CHECK(s1.out == s1b.out);
    CHECK(s1.out != s2.out);
    ::setenv("QPOLAR_SEED", "2", 1);
    const Result env = with_seed("1");
    ::unsetenv("QPOLAR_SEED");
    CHECK(env.out == s2.out);
  }

  TEST_CASE("errors exit nonzero with a diagnostic") {
    CHECK(run({"frobnicate"}).status != 0);
    CHECK(run({}).status != 0);
    const Result missing = run({"polar", "--matrix", "/nonexistent/a.txt", "--state", "/nonexistent/b.txt"});
    CHECK(missing.status != 0);
    CHECK_FALSE(missing.err.empty());
    const Result bad = run({"qsvt-phases", "--delta", "2", "--eps", "1e-3"});
    CHECK(bad.status != 0);
    CHECK(bad.err.find("delta") != std::string::npos);
  }

  TEST_CASE("help documents the columns") {
    const Result r = run({"dme-bench", "--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("t0,T,n_copies_total,eps_D,residual,qpe_residual") != std::string::npos);
  }
}
