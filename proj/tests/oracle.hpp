#pragma once

// Reference computations kept independent of the library: groups are built
// from a Coxeter matrix in the geometric reflection representation, lengths
// are BFS depths and descents come from length comparisons only.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

/// Coxeter matrix of A_n, B_n, D_n or I2(m) ("A", 3) etc.
Matrix coxeter_matrix(const std::string& family, int parameter);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

struct Group {
    int rank = 0;
    int size = 0;
    std::vector<int> length;
    std::vector<std::vector<int>> right;  // right[s][i]: index of w_i s
    std::vector<std::vector<int>> left;   // left[s][i]:  index of s w_i
    std::vector<std::uint64_t> right_descents, left_descents;
};

Group build(const Matrix& m, int max_size = 2'000'000);

/// counts[i][j] = #{w : |right descents| = i, |left descents| = j}
std::vector<std::vector<mpz_class>> joint_counts(const Group& g);

/// tally[k] = #{w : t(w) = k}
std::vector<mpz_class> t_tally(const Group& g);

/// Eulerian number <n, k>: permutations of n letters with k descents.
mpz_class eulerian(int n, int k);

/// Exact moments of an integer law given by counts.
mpq_class central_moment(const std::vector<mpz_class>& counts, int k);
mpq_class mean(const std::vector<mpz_class>& counts);

}  // namespace oracle
