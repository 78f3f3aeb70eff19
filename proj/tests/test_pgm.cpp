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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "qpolar/pgm.hpp"

using namespace qpolar;

TEST_SUITE("pgm") {
  TEST_CASE("two-state ensemble against a closed-form inverse square root") {
    const double s = std::sqrt(0.5);
    Ensemble e;
    e.p = {0.5, 0.5};
    e.states = CMatrix{{1.0, s}, {0.0, s}};
    const CMatrix rho = ensemble_density(e);
    const CMatrix rho_inv_sqrt = testing::inverse_2x2(testing::sqrt_2x2(rho));
    for (const CVector& omega : {CVector{1.0, 0.0}, CVector{0.6, cplx{0.0, 0.8}}}) {
      const PgmDistribution d = qpgm_oracle(e, omega);
      REQUIRE(d.probs.size() == 3);
      for (std::size_t k = 0; k < 2; ++k) {
        const CVector nu = cplx{std::sqrt(e.p[k])} * (rho_inv_sqrt * e.states.col(k));
        CHECK(d.probs[k] == doctest::Approx(std::norm(inner(nu, omega))).epsilon(1e-12));
      }
      CHECK(d.probs[2] == doctest::Approx(0.0).epsilon(1e-12));
    }
  }

  TEST_CASE("measurement vectors resolve the support") {
    Rng rng(50);
    Ensemble e;
    e.p = {0.2, 0.3, 0.5};
    e.states = CMatrix(4, 3);
    for (std::size_t k = 0; k < 3; ++k) e.states.set_col(k, random_state(4, rng));
    const CMatrix nu = pgm_vectors(e);
    const CMatrix sum = nu * nu.adjoint();
    const SvdResult s = svd(ensemble_density(e));
    CHECK(frobenius_norm(sum - column_projector(s.W)) <= 1e-10);
    const PgmDistribution d = qpgm_oracle(e, random_state(4, rng));
    double total = 0.0;
    for (double p : d.probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.probs[3] >= 0.0);
  }

  TEST_CASE("orthonormal ensemble gives the basis indicator") {
    Rng rng(51);
    const CMatrix u = haar_unitary(4, rng);
    Ensemble e;
    e.p.assign(4, 0.25);
    e.states = u;
    const PgmDistribution d = qpgm_oracle(e, u.col(2));
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(d.probs[k] - (k == 2 ? 1.0 : 0.0)) <= 1e-12);
    const PgmRun run = pgm_circuit(e, u.col(2), 1e-2);
    CHECK(tv_distance(run.dist.probs, d.probs) <= 1e-2);
    CHECK(petz_ideal(e, u.col(2)).x_marginal.probs[2] == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("circuit and Petz map agree with the oracle") {
    Rng rng(52);
    Ensemble e;
    e.p = {0.6, 0.4};
    e.states = CMatrix(2, 2);
    e.states.set_col(0, basis_vector(2, 0));
    e.states.set_col(1, normalized(CVector{0.3, 1.0}));
    const CVector omega = random_state(2, rng);
    const PgmDistribution oracle = qpgm_oracle(e, omega);
    const PgmRun run = pgm_circuit(e, omega, 1e-2);
    CHECK(tv_distance(run.dist.probs, oracle.probs) <= 1e-2);
    CHECK(run.kappa_a == doctest::Approx(kappa(pgm_matrix(e))).epsilon(1e-12));
    CHECK(run.polar.ledger.count("u_phi") == run.polar.encoder_uses);
    const PetzResult petz = petz_ideal(e, omega);
    CHECK(is_density_matrix(petz.state, 1e-10));
    CHECK(tv_distance(petz.x_marginal.probs, oracle.probs) <= 1e-12);
  }

  TEST_CASE("sampling mode") {
    Rng rng(53);
    const RVector probs{0.1, 0.6, 0.3};
    const RVector f = sample_frequencies(probs, 20000, rng);
    CHECK(f[0] + f[1] + f[2] == doctest::Approx(1.0));
    CHECK(tv_distance(f, probs) <= 0.02);
    Rng a(1), b(1);
    CHECK(sample_frequencies(probs, 100, a) == sample_frequencies(probs, 100, b));
  }

  TEST_CASE("cost models") {
    const CostModel c = cost_models(1.0, 1.0, 1.0, 1.0);
    CHECK(c.petz == 3.0);
    CHECK(c.polar == 2.0);
    const CostModel d = cost_models(4.0, 4.0, 1.0, 1.0);
    // 64*2 + (64*2 + 8*4) and 2*4*2
    CHECK(d.petz == 288.0);
    CHECK(d.polar == 16.0);
    CHECK(d.ratio() == 18.0);
  }

  TEST_CASE("ensemble files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qpolar_pgm_test";
    fs::create_directories(dir);
    write_matrix_file((dir / "states.txt").string(), CMatrix{{1.0, 0.0}, {0.0, 1.0}});
    {
      std::ofstream f(dir / "probs.txt");
      f << "0.25\n0.75\n";
    }
    const Ensemble e = load_ensemble(dir.string());
    CHECK(e.r() == 2);
    CHECK(e.p[1] == 0.75);
    {
      std::ofstream f(dir / "probs.txt");
      f << "0.25\n0.5\n";
    }
    CHECK_THROWS_AS(load_ensemble(dir.string()), Error);
    fs::remove_all(dir);
  }
}
