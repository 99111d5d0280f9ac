#pragma once

#include <cstddef>
#include <vector>

#include "bicov/errors.hpp"
#include "bicov/rational.hpp"

namespace bicov::detail {

// Dense two-phase primal simplex over exact rationals with Bland's least-index
// anti-cycling rule. Solves  min c.x  s.t.  M x = b, x >= 0  with b >= 0.
// Never suffers numerical failure; cycling is excluded by the pivot rule.
class ExactSimplex {
 public:
  ExactSimplex(std::vector<std::vector<rational>> m, std::vector<rational> b,
               std::vector<rational> c)
      : rows_(m.size()), cols_(c.size()), t_(std::move(m)), rhs_(std::move(b)), cost_(std::move(c)) {
    for (auto& row : t_) row.resize(cols_ + rows_, rational(0));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      t_[i][cols_ + i] = 1;  // artificial
      basis_[i] = cols_ + i;
    }
  }

  // Returns the optimal objective value; feasibility is the caller's contract.
  rational solve(std::vector<rational>* primal = nullptr) {
    // phase 1: minimize the sum of artificials
    std::vector<rational> obj(cols_ + rows_, rational(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      for (std::size_t i = 0; i < rows_; ++i) obj[j] -= t_[i][j];
    }
    iterate(obj, cols_ + rows_);
    rational art_level = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] >= cols_) art_level += rhs_[i];
    }
    if (art_level != 0) {
      throw domain_error("linear program is infeasible");
    }
    // drive artificials out of the basis where possible
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
    // phase 2: real objective, artificial columns barred from entering
    std::vector<rational> obj2(cols_ + rows_, rational(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      obj2[j] = cost_[j];
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basis_[i] < cols_) obj2[j] -= cost_[basis_[i]] * t_[i][j];
      }
    }
    iterate(obj2, cols_);
    rational value = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) value += cost_[basis_[i]] * rhs_[i];
    }
    if (primal) {
      primal->assign(cols_, rational(0));
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basis_[i] < cols_) (*primal)[basis_[i]] = rhs_[i];
      }
    }
    return value;
  }

 private:
  void iterate(std::vector<rational>& obj, std::size_t enter_limit) {
    for (;;) {
      std::size_t enter = enter_limit;
      for (std::size_t j = 0; j < enter_limit; ++j) {  // Bland: lowest index
        if (obj[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == enter_limit) return;  // optimal
      std::size_t leave = rows_;
      rational best_ratio = 0;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (t_[i][enter] <= 0) continue;
        rational ratio = rhs_[i] / t_[i][enter];
        if (leave == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows_) {
        throw domain_error("linear program is unbounded");
      }
      pivot(leave, enter);
      // fold the pivot column out of the objective row
      rational f = obj[enter];
      if (f != 0) {
        for (std::size_t j = 0; j < cols_ + rows_; ++j) obj[j] -= f * t_[leave][j];
      }
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    rational p = t_[row][col];
    for (auto& v : t_[row]) v /= p;
    rhs_[row] /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || t_[i][col] == 0) continue;
      rational f = t_[i][col];
      for (std::size_t j = 0; j < cols_ + rows_; ++j) t_[i][j] -= f * t_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  std::size_t rows_, cols_;
  std::vector<std::vector<rational>> t_;
  std::vector<rational> rhs_;
  std::vector<rational> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace bicov::detail
