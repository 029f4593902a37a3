// Copyright 2026 The pfg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Test-only oracles: independent implementations that the library's answers
// are checked against. Each one deliberately uses a different algorithm than
// the code under test.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pfg/coalition.hpp"
#include "pfg/partition.hpp"
#include "pfg/rational.hpp"

namespace oracle {

// Bell numbers B(0..max_n) via the Bell-triangle recurrence: each row starts
// with the previous row's last entry and adds pairwise to the left neighbor.
inline std::vector<std::uint64_t> bell_numbers(int max_n) {
  std::vector<std::uint64_t> bells{1};
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= max_n; ++i) {
    std::vector<std::uint64_t> next(row.size() + 1);
    next[0] = row.back();
    for (std::size_t j = 0; j < row.size(); ++j) next[j + 1] = next[j] + row[j];
    bells.push_back(next[0]);
    row = std::move(next);
  }
  return bells;
}

// The deletion characterization of the reduction relation: r1 is reducible
// from r2 exactly when deleting some agent set from r2 (dropping blocks that
// empty out) leaves a superset of r1's blocks; surplus whole blocks are then
// deleted too. Brute-forces every deletion set over the ground set.
inline bool reduces_by_deletion(const pfg::PartitionFragment& r1,
                                const pfg::PartitionFragment& r2, int n) {
  const auto full = pfg::Coalition::full(n).bits();
  for (std::uint32_t bits = 0; bits <= full; ++bits) {
    const pfg::Coalition deleted =
        pfg::Coalition::from_bits(static_cast<pfg::Coalition::mask_type>(bits));
    std::vector<pfg::Coalition> remaining;
    for (const pfg::Coalition& b : r2.blocks()) {
      if (!b.minus(deleted).empty()) remaining.push_back(b.minus(deleted));
    }
    bool covers = true;
    for (const pfg::Coalition& small : r1.blocks()) {
      bool found = false;
      for (const pfg::Coalition& b : remaining) found = found || (b == small);
      covers = covers && found;
    }
    if (covers) return true;
  }
  return false;
}

// Exact Gaussian elimination with partial pivoting on the first nonzero
// entry. Throws if the matrix is singular.
inline std::vector<pfg::Rational> gauss_solve(
    std::vector<std::vector<pfg::Rational>> a, std::vector<pfg::Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const pfg::Rational factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<pfg::Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Closed form for the number of partitions of an n-agent ground set that a
// fragment with `blocks` blocks covering `covered` agents reduces from: each
// uncovered agent either joins one of the fragment's blocks or stays outside,
// and the outside agents form an arbitrary partition. Summing over the k
// outside agents:
//
//   count = sum_k C(u, k) * B(k) * blocks^(u - k),   u = n - covered.
inline pfg::BigInt closed_form_extensions(int blocks, int covered, int n) {
  const int u = n - covered;
  if (u < 0) throw std::invalid_argument("fragment exceeds ground set");
  const auto bells = bell_numbers(u);
  pfg::BigInt total = 0;
  for (int k = 0; k <= u; ++k) {
    pfg::BigInt choose = 1;
    for (int j = 0; j < k; ++j) choose = choose * (u - j) / (j + 1);
    pfg::BigInt power = 1;
    for (int j = 0; j < u - k; ++j) power *= blocks;
    total += choose * bells[static_cast<std::size_t>(k)] * power;
  }
  return total;
}

// Every fragment over the ground set {0, ..., n-1}: each subset of agents,
// partitioned every possible way; the empty subset contributes the
// distinguished {emptyset} fragment.
inline std::vector<pfg::PartitionFragment> all_fragments(int n) {
  std::vector<pfg::PartitionFragment> out{pfg::PartitionFragment::empty_set()};
  const auto full = pfg::Coalition::full(n).bits();
  for (std::uint32_t bits = 1; bits <= full; ++bits) {
    const pfg::Coalition agents =
        pfg::Coalition::from_bits(static_cast<pfg::Coalition::mask_type>(bits));
    const std::vector<int> members = agents.members();
    const int k = static_cast<int>(members.size());
    for (const pfg::Partition& p : pfg::enumerate_partitions(k)) {
      std::vector<pfg::Coalition> blocks;
      for (const pfg::Coalition& b : p.blocks()) {
        pfg::Coalition relabeled;
        for (int a : b.members()) {
          relabeled = relabeled.with(members[static_cast<std::size_t>(a)]);
        }
        blocks.push_back(relabeled);
      }
      out.push_back(pfg::PartitionFragment::of_blocks(std::move(blocks)));
    }
  }
  return out;
}

}  // namespace oracle
