#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "kfield/errors.hpp"

namespace kfield {

// Named constants (e.g. material parameters) that expressions may reference
// in addition to the chart coordinates.
using ParamSet = std::map<std::string, double>;

// Darboux coordinate bookkeeping for (q^i, p_i^alpha [, z^alpha]) with base
// dimension n and k parameters. The coordinate order is fixed: q^1..q^n,
// then momenta grouped by i and ordered by alpha (p_1^1..p_1^k, p_2^1, ...),
// then z^1..z^k when present. Indices i and alpha are 1-based throughout,
// matching the coordinate names q1, p1_1, z1.
class DarbouxChart {
public:
  DarbouxChart(int n, int k, bool with_z, std::vector<std::string> q_names = {},
               std::vector<std::vector<std::string>> p_names = {},
               std::vector<std::string> z_names = {})
      : n_(n), k_(k), has_z_(with_z) {
    if (n < 1 || k < 1) throw Error("chart dimensions must be positive");
    if (q_names.empty()) {
      for (int i = 1; i <= n; ++i) q_names.push_back("q" + std::to_string(i));
    }
    if (p_names.empty()) {
      for (int i = 1; i <= n; ++i) {
        std::vector<std::string> row;
        for (int a = 1; a <= k; ++a)
          row.push_back("p" + std::to_string(i) + "_" + std::to_string(a));
        p_names.push_back(std::move(row));
      }
    }
    if (with_z && z_names.empty()) {
      for (int a = 1; a <= k; ++a) z_names.push_back("z" + std::to_string(a));
    }
    if (static_cast<int>(q_names.size()) != n) throw Error("chart needs n base coordinate names");
    if (static_cast<int>(p_names.size()) != n) throw Error("chart needs n momentum name rows");
    for (const auto& row : p_names)
      if (static_cast<int>(row.size()) != k) throw Error("each momentum row needs k names");
    if (!with_z && !z_names.empty()) throw Error("z names given for a chart without z");
    if (with_z && static_cast<int>(z_names.size()) != k) throw Error("chart needs k z names");

    for (const auto& name : q_names) push_name(name);
    for (const auto& row : p_names)
      for (const auto& name : row) push_name(name);
    for (const auto& name : z_names) push_name(name);
  }

  static DarbouxChart cotangent(int n, int k) { return DarbouxChart(n, k, false); }
  static DarbouxChart contact(int n, int k) { return DarbouxChart(n, k, true); }

  int n() const { return n_; }
  int k() const { return k_; }
  bool has_z() const { return has_z_; }
  int dim() const { return static_cast<int>(names_.size()); }

  // Positions in the fixed coordinate order; i in 1..n, alpha in 1..k.
  int q_index(int i) const { return check_i(i), i - 1; }
  int p_index(int i, int alpha) const { return check_i(i), check_a(alpha), n_ + (i - 1) * k_ + (alpha - 1); }
  int z_index(int alpha) const {
    if (!has_z_) throw Error("chart has no z coordinates");
    check_a(alpha);
    return n_ + n_ * k_ + (alpha - 1);
  }

  const std::string& name(int index) const { return names_.at(static_cast<std::size_t>(index)); }
  const std::string& q_name(int i) const { return names_[q_index(i)]; }
  const std::string& p_name(int i, int alpha) const { return names_[p_index(i, alpha)]; }
  const std::string& z_name(int alpha) const { return names_[z_index(alpha)]; }
  const std::vector<std::string>& coordinates() const { return names_; }

  bool has_coordinate(const std::string& name) const { return index_.count(name) > 0; }
  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error("no coordinate named " + name);
    return it->second;
  }

  bool operator==(const DarbouxChart& other) const {
    return n_ == other.n_ && k_ == other.k_ && has_z_ == other.has_z_ && names_ == other.names_;
  }
  bool operator!=(const DarbouxChart& other) const { return !(*this == other); }

  // The chart extended by default-named z coordinates (for contactification).
  DarbouxChart with_z(std::vector<std::string> z_names = {}) const {
    if (has_z_) throw Error("chart already has z coordinates");
    DarbouxChart out(n_, k_, true, q_name_list(), p_name_table(), std::move(z_names));
    return out;
  }

  // The chart with the z block dropped (for projection back to the base).
  DarbouxChart without_z() const {
    if (!has_z_) throw Error("chart has no z coordinates");
    return DarbouxChart(n_, k_, false, q_name_list(), p_name_table());
  }

  std::vector<std::string> q_name_list() const {
    return {names_.begin(), names_.begin() + n_};
  }

  std::vector<std::vector<std::string>> p_name_table() const {
    std::vector<std::vector<std::string>> out;
    for (int i = 1; i <= n_; ++i) {
      std::vector<std::string> row;
      for (int a = 1; a <= k_; ++a) row.push_back(p_name(i, a));
      out.push_back(std::move(row));
    }
    return out;
  }

private:
  void push_name(const std::string& name) {
    if (name.empty()) throw Error("coordinate names must be nonempty");
    if (!index_.emplace(name, static_cast<int>(names_.size())).second)
      throw Error("duplicate coordinate name: " + name);
    names_.push_back(name);
  }

  void check_i(int i) const {
    if (i < 1 || i > n_) throw Error("base index out of range: " + std::to_string(i));
  }
  void check_a(int alpha) const {
    if (alpha < 1 || alpha > k_) throw Error("parameter index out of range: " + std::to_string(alpha));
  }

  int n_, k_;
  bool has_z_;
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

}  // namespace kfield
