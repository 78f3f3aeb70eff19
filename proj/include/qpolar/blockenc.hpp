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

#pragma once

#include <string>

#include "qpolar/ledger.hpp"
#include "qpolar/linalg.hpp"

namespace qpolar {

// Register convention throughout: ancillas are the most significant
// (leftmost) qubits, the system register is the least significant.

/// Unitary U on a+n qubits whose top-left 2^n x 2^n block is A/alpha.
struct BlockEncoding {
  CMatrix U;
  double alpha = 1.0;
  unsigned a = 0;
  unsigned n = 0;
  QueryLedger per_use;  // oracle charges for one application of U or U^dagger

  std::size_t system_dim() const { return std::size_t{1} << n; }
  std::size_t ancilla_dim() const { return std::size_t{1} << a; }
  std::size_t dim() const { return U.rows(); }
};

/// U|i>|0> = |i>|phi_i> on g+n qubits.
struct StatePrepOracle {
  CMatrix U;
  unsigned g = 0;
  unsigned n = 0;
  std::size_t r = 0;  // number of prepared states (<= 2^g)
  std::string name;   // ledger key
};

/// Oracle for the columns of `states` (N x r, N a power of two). Rows i >= r
/// of the index register act as identity. g = ceil(log2 r).
StatePrepOracle make_state_prep(const CMatrix& states, const std::string& name);

/// U|i>|y> = |i>|y xor i> on g+n qubits (requires 2^g <= 2^n).
StatePrepOracle copy_oracle(unsigned g, unsigned n, const std::string& name = "u_copy");

/// Unitary on ceil(log2 r) qubits whose first column is (sqrt p_k).
CMatrix amplitude_oracle(const RVector& p);

/// U|k>|0> = |k>(sqrt(p_k)|0> + sqrt(1-p_k)|1>), on g+1 qubits, rotation qubit last.
CMatrix rotation_oracle(const RVector& p);

CMatrix hadamard_n(unsigned k);
CMatrix pauli_x();
/// |0><0| (x) I + |1><1| (x) U
CMatrix controlled(const CMatrix& u);

/// Swap-test construction (G2^dagger (x) I)(I_g (x) SWAP)(G1 (x) I) on registers
/// [g][n][n]. Encodes sum_k sqrt(p_k s_k)|psi_k><phi_k| with alpha = 1.
BlockEncoding weighted_projector_encoding(const StatePrepOracle& u_psi,
                                          const StatePrepOracle& u_phi, const CMatrix& u_p,
                                          const CMatrix& u_s, const std::string& p_name = "u_p",
                                          const std::string& s_name = "u_s");

/// LCU construction on registers [c][g][n], encoding A = sum_k |phi_k><psi_k|
/// with alpha = r. Each application costs two uses of each controlled oracle.
BlockEncoding lcu_encoding(const StatePrepOracle& u_psi, const StatePrepOracle& u_phi);

/// Rotation-oracle variant on registers [c][g][rot][n], encoding
/// A = sum_k sqrt(p_k)|k><phi_k| with alpha = r.
BlockEncoding rotation_encoding(const StatePrepOracle& u_phi, const CMatrix& u_p_rot);

/// One-ancilla unitary dilation of A/alpha, padded to a power-of-two size.
BlockEncoding direct_encoding(const CMatrix& a, double alpha = 1.0,
                              const std::string& name = "u_a");

/// alpha * (<0^a| (x) I) U (|0^a> (x) I)
CMatrix extract_block(const BlockEncoding& be);
bool verify_encoding(const BlockEncoding& be, const CMatrix& a, double delta);

}  // namespace qpolar
