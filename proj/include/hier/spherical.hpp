// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "hier/orbitstats.hpp"

namespace hier {

using Matrix = std::vector<std::vector<double>>;

// Symmetric matrix over {P, O_1, ..., O_N} with unit diagonal.
struct SphericalSpec {
  ClassTable table;
  Matrix s;
};

struct SpecVerdict {
  bool valid = true;
  double min_eigenvalue = 0.0;
  std::vector<std::string> problems;
};

SpecVerdict validate_spec(const SphericalSpec& spec, double tol = 1e-8);

// Product of s_pq^theta_pq over p != q. Throws ValidationError on an
// invalid spec.
double phi_nessonov(const Spheromorphism& g, const SphericalSpec& spec);

// Unit vectors for thorn classes with at most `cap` vertices; every other
// class of residue `iota` gets `limit`.
struct TensorSpec {
  Arity arity{2};
  int iota = 0;
  int cap = 3;
  std::vector<double> limit;
  std::vector<std::pair<ThornCode, std::vector<double>>> classes;

  const std::vector<double>& vector_for(const ThornCode& code) const;
};

void validate_tensor_spec(const TensorSpec& spec);

struct TensorValue {
  double value = 1.0;
  // Some moved set involved a class above the cap.
  bool cap_lumped = false;
};

TensorValue phi_tensor(const Spheromorphism& g, const TensorSpec& spec);

// The spherical spec with s_pq = <e_p, e_q> over the listed classes.
SphericalSpec gram_spec(const TensorSpec& spec);

// 1 on automorphisms, 0 elsewhere.
double phi_l2(const Spheromorphism& g);

class SphericalFunction {
 public:
  using Eval = std::function<double(const Spheromorphism&)>;

  SphericalFunction(std::string name, Eval eval) : name_(std::move(name)), eval_(std::move(eval)) {}

  static SphericalFunction nessonov(SphericalSpec spec);
  static SphericalFunction tensor(TensorSpec spec);
  static SphericalFunction l2();
  static SphericalFunction product(SphericalFunction a, SphericalFunction b);

  const std::string& name() const noexcept { return name_; }
  double operator()(const Spheromorphism& g) const { return eval_(g); }

 private:
  std::string name_;
  Eval eval_;
};

// Eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi sweeps,
// stopping once the off-diagonal Frobenius mass drops below
// rel_tol * ||a||_F.
std::vector<double> symmetric_eigenvalues(Matrix a, double rel_tol = 1e-12,
                                          int max_sweeps = 100);

struct GramReport {
  std::size_t elements = 0;
  Matrix matrix;
  std::vector<double> eigenvalues;
  double min_eigenvalue = 0.0;
  double tol = 1e-8;
  double threshold = 0.0;
  bool pass = false;
  std::vector<std::string> warnings;
};

// M(i, j) = phi(g_i^-1 g_j); PASS iff min eigenvalue >= -tol * max |M(i, j)|.
GramReport gram_psd_check(const std::vector<Spheromorphism>& elements,
                          const SphericalFunction& phi, double tol = 1e-8);

std::string to_text(const GramReport& report);

// "arity n", "iota i", "classes <token>...", "matrix", then one row per line.
std::string to_text(const SphericalSpec& spec);
SphericalSpec spherical_spec_from_text(std::string_view text);

// "arity n", "iota i", "cap M", "limit x...", "class <token> x..." lines.
std::string to_text(const TensorSpec& spec);
TensorSpec tensor_spec_from_text(std::string_view text);

}  // namespace hier
