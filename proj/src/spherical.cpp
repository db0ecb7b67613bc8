// SPDX-License-Identifier: Apache-2.0
#include "hier/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace hier {

namespace {

double frobenius(const Matrix& a) {
  double sum = 0.0;
  for (const auto& row : a) {
    for (double x : row) sum += x * x;
  }
  return std::sqrt(sum);
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (const auto& row : a) {
    for (double x : row) m = std::max(m, std::abs(x));
  }
  return m;
}

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

std::vector<double> symmetric_eigenvalues(Matrix a, double rel_tol, int max_sweeps) {
  const std::size_t n = a.size();
  const double scale = frobenius(a);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) off += a[i][j] * a[i][j];
      }
    }
    if (std::sqrt(off) <= rel_tol * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double kp = a[k][p];
          const double kq = a[k][q];
          a[k][p] = c * kp - s * kq;
          a[k][q] = s * kp + c * kq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double pk = a[p][k];
          const double qk = a[q][k];
          a[p][k] = c * pk - s * qk;
          a[q][k] = s * pk + c * qk;
        }
      }
    }
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a[i][i];
  std::sort(values.begin(), values.end());
  return values;
}

SpecVerdict validate_spec(const SphericalSpec& spec, double tol) {
  SpecVerdict v;
  const auto size = static_cast<std::size_t>(spec.table.size());
  auto fail = [&](std::string msg) {
    v.valid = false;
    v.problems.push_back(std::move(msg));
  };
  if (spec.s.size() != size) {
    fail("matrix has " + std::to_string(spec.s.size()) + " rows, expected " +
         std::to_string(size));
    return v;
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (spec.s[i].size() != size) {
      fail("row " + std::to_string(i) + " has " + std::to_string(spec.s[i].size()) +
           " entries, expected " + std::to_string(size));
      return v;
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (!std::isfinite(spec.s[i][i]) || std::abs(spec.s[i][i] - 1.0) > tol) {
      fail("diagonal entry " + std::to_string(i) + " is " + number(spec.s[i][i]) + ", not 1");
    }
    for (std::size_t j = i + 1; j < size; ++j) {
      if (!std::isfinite(spec.s[i][j]) || std::abs(spec.s[i][j] - spec.s[j][i]) > tol) {
        fail("entries (" + std::to_string(i) + "," + std::to_string(j) + ") and (" +
             std::to_string(j) + "," + std::to_string(i) + ") differ");
      }
    }
  }
  if (!v.valid) return v;
  v.min_eigenvalue = symmetric_eigenvalues(spec.s).front();
  if (v.min_eigenvalue < -tol * frobenius(spec.s)) {
    fail("matrix is not positive semidefinite: minimum eigenvalue " + number(v.min_eigenvalue));
  }
  return v;
}

namespace {

void require_valid(const SphericalSpec& spec) {
  const auto v = validate_spec(spec);
  if (v.valid) return;
  std::string msg = "invalid spherical spec";
  for (const auto& p : v.problems) msg += "; " + p;
  throw ValidationError(msg);
}

}  // namespace

double phi_nessonov(const Spheromorphism& g, const SphericalSpec& spec) {
  require_valid(spec);
  const auto t = theta(g, spec.table);
  double value = 1.0;
  for (int p = 0; p < t.size(); ++p) {
    for (int q = 0; q < t.size(); ++q) {
      if (p == q || t.at(p, q) == 0) continue;
      value *= std::pow(spec.s[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)],
                        static_cast<double>(t.at(p, q)));
    }
  }
  return value;
}

const std::vector<double>& TensorSpec::vector_for(const ThornCode& code) const {
  for (const auto& [c, v] : classes) {
    if (c == code) return v;
  }
  return limit;
}

void validate_tensor_spec(const TensorSpec& spec) {
  if (spec.iota < 0 || spec.iota >= spec.arity.modulus()) {
    throw ValidationError("iota " + std::to_string(spec.iota) + " out of range");
  }
  if (spec.cap < 1) throw ValidationError("cap must be at least 1");
  if (spec.limit.empty()) throw ValidationError("limit vector is empty");
  auto unit = [&](const std::vector<double>& v, const std::string& what) {
    if (v.size() != spec.limit.size()) {
      throw ValidationError(what + " has dimension " + std::to_string(v.size()) + ", expected " +
                            std::to_string(spec.limit.size()));
    }
    if (std::abs(dot(v, v) - 1.0) > 1e-9) throw ValidationError(what + " is not a unit vector");
  };
  unit(spec.limit, "limit vector");
  std::set<ThornCode> seen;
  for (const auto& [code, v] : spec.classes) {
    const std::string what = "vector of class " + code.token();
    if (!seen.insert(code).second) throw ValidationError("duplicate " + what);
    if (!is_reduced_class(code, spec.arity)) {
      throw ValidationError("class " + code.token() + " is not a reduced thorn of T_n");
    }
    if (code.spike_count() % spec.arity.modulus() != spec.iota) {
      throw ValidationError("class " + code.token() + " has the wrong spike residue");
    }
    if (code.vertex_count() > spec.cap) {
      throw ValidationError("class " + code.token() + " exceeds the cap");
    }
    unit(v, what);
  }
}

TensorValue phi_tensor(const Spheromorphism& g, const TensorSpec& spec) {
  validate_tensor_spec(spec);
  if (g.arity() != spec.arity) throw ArityMismatch("element and tensor spec differ in arity");
  const ClassTable table(spec.arity, spec.iota, reduced_classes(spec.arity, spec.cap, spec.iota));
  TensorValue out;
  for (const auto& m : moved_sets(g, table)) {
    const auto from = classify_clopen(m.omega);
    const auto to = classify_clopen(act_on_clopen(g, m.omega));
    if (m.from == 0 || m.to == 0) out.cap_lumped = true;
    out.value *= dot(spec.vector_for(to), spec.vector_for(from));
  }
  return out;
}

SphericalSpec gram_spec(const TensorSpec& spec) {
  std::vector<ThornCode> tracked;
  std::vector<const std::vector<double>*> vecs{&spec.limit};
  for (const auto& [code, v] : spec.classes) {
    tracked.push_back(code);
    vecs.push_back(&v);
  }
  Matrix s(vecs.size(), std::vector<double>(vecs.size()));
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    for (std::size_t j = 0; j < vecs.size(); ++j) s[i][j] = i == j ? 1.0 : dot(*vecs[i], *vecs[j]);
  }
  return {ClassTable(spec.arity, spec.iota, std::move(tracked)), std::move(s)};
}

double phi_l2(const Spheromorphism& g) { return is_automorphism(g) ? 1.0 : 0.0; }

SphericalFunction SphericalFunction::nessonov(SphericalSpec spec) {
  require_valid(spec);
  return {"nessonov", [spec = std::move(spec)](const Spheromorphism& g) {
            return phi_nessonov(g, spec);
          }};
}

SphericalFunction SphericalFunction::tensor(TensorSpec spec) {
  validate_tensor_spec(spec);
  return {"tensor", [spec = std::move(spec)](const Spheromorphism& g) {
            return phi_tensor(g, spec).value;
          }};
}

SphericalFunction SphericalFunction::l2() { return {"l2", phi_l2}; }

SphericalFunction SphericalFunction::product(SphericalFunction a, SphericalFunction b) {
  std::string name = "(" + a.name() + "*" + b.name() + ")";
  return {std::move(name), [a = std::move(a), b = std::move(b)](const Spheromorphism& g) {
            return a(g) * b(g);
          }};
}

GramReport gram_psd_check(const std::vector<Spheromorphism>& elements,
                          const SphericalFunction& phi, double tol) {
  GramReport r;
  r.elements = elements.size();
  r.tol = tol;
  const std::size_t k = elements.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (equals(elements[i], elements[j])) {
        r.warnings.push_back("elements " + std::to_string(i) + " and " + std::to_string(j) +
                             " are equal");
      }
    }
  }
  std::vector<Spheromorphism> inverses;
  for (const auto& g : elements) inverses.push_back(invert(g));
  r.matrix.assign(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) r.matrix[i][j] = phi(compose(inverses[i], elements[j]));
  }
  Matrix sym = r.matrix;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (std::abs(r.matrix[i][j] - r.matrix[j][i]) > 1e-12 * std::max(1.0, max_abs(r.matrix))) {
        r.warnings.push_back("matrix is not symmetric at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
      }
      sym[i][j] = sym[j][i] = 0.5 * (r.matrix[i][j] + r.matrix[j][i]);
    }
  }
  r.eigenvalues = symmetric_eigenvalues(std::move(sym));
  r.min_eigenvalue = r.eigenvalues.empty() ? 0.0 : r.eigenvalues.front();
  r.threshold = -tol * max_abs(r.matrix);
  r.pass = r.min_eigenvalue >= r.threshold;
  return r;
}

std::string to_text(const GramReport& r) {
  std::ostringstream os;
  os << "gram matrix (" << r.elements << " elements)\n";
  for (const auto& row : r.matrix) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << number(row[j]);
    os << '\n';
  }
  os << "eigenvalues";
  for (double e : r.eigenvalues) os << ' ' << number(e);
  os << '\n';
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
  os << "min_eig=" << number(r.min_eigenvalue) << '\n';
  os << "tol=" << number(r.tol) << '\n';
  os << "verdict=" << (r.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

// ---------------------------------------------------------------- text

namespace {

struct Lines {
  std::vector<std::pair<int, std::vector<std::string>>> rows;  // line number, words
};

Lines split_lines(std::string_view text) {
  Lines out;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> words;
    std::string w;
    while (ls >> w) words.push_back(w);
    if (!words.empty()) out.rows.emplace_back(lineno, std::move(words));
  }
  return out;
}

[[noreturn]] void bad_line(int lineno, const std::string& msg) {
  throw ValidationError("line " + std::to_string(lineno) + ": " + msg);
}

int parse_int(const std::string& s, int lineno) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  bad_line(lineno, "expected an integer, got \"" + s + "\"");
}

double parse_double(const std::string& s, int lineno) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  bad_line(lineno, "expected a number, got \"" + s + "\"");
}

ThornCode parse_code(const std::string& s, int lineno) {
  try {
    return ThornCode::from_token(s);
  } catch (const ValidationError& e) {
    bad_line(lineno, e.what());
  }
}

std::vector<double> parse_vector(const std::vector<std::string>& words, std::size_t from,
                                 int lineno) {
  std::vector<double> v;
  for (std::size_t i = from; i < words.size(); ++i) v.push_back(parse_double(words[i], lineno));
  return v;
}

}  // namespace

std::string to_text(const SphericalSpec& spec) {
  std::ostringstream os;
  os << "arity " << spec.table.arity().n() << "\niota " << spec.table.iota() << "\nclasses";
  for (const auto& c : spec.table.tracked()) os << ' ' << c.token();
  os << "\nmatrix\n";
  for (const auto& row : spec.s) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << number(row[j]);
    os << '\n';
  }
  return os.str();
}

SphericalSpec spherical_spec_from_text(std::string_view text) {
  std::optional<Arity> arity;
  std::optional<int> iota;
  std::vector<ThornCode> classes;
  Matrix s;
  bool in_matrix = false;
  for (const auto& [lineno, words] : split_lines(text).rows) {
    if (in_matrix) {
      s.push_back(parse_vector(words, 0, lineno));
      continue;
    }
    const auto& key = words[0];
    if (key == "arity" && words.size() == 2) {
      try {
        arity.emplace(parse_int(words[1], lineno));
      } catch (const ValidationError& e) {
        bad_line(lineno, e.what());
      }
    } else if (key == "iota" && words.size() == 2) {
      iota = parse_int(words[1], lineno);
    } else if (key == "classes") {
      for (std::size_t i = 1; i < words.size(); ++i) classes.push_back(parse_code(words[i], lineno));
    } else if (key == "matrix" && words.size() == 1) {
      in_matrix = true;
    } else {
      bad_line(lineno, "unexpected \"" + key + "\"");
    }
  }
  if (!arity || !iota || !in_matrix) {
    throw ValidationError("spherical spec needs arity, iota, classes and matrix sections");
  }
  return {ClassTable(*arity, *iota, std::move(classes)), std::move(s)};
}

std::string to_text(const TensorSpec& spec) {
  std::ostringstream os;
  os << "arity " << spec.arity.n() << "\niota " << spec.iota << "\ncap " << spec.cap << "\nlimit";
  for (double x : spec.limit) os << ' ' << number(x);
  os << '\n';
  for (const auto& [code, v] : spec.classes) {
    os << "class " << code.token();
    for (double x : v) os << ' ' << number(x);
    os << '\n';
  }
  return os.str();
}

TensorSpec tensor_spec_from_text(std::string_view text) {
  TensorSpec spec;
  bool have_arity = false;
  for (const auto& [lineno, words] : split_lines(text).rows) {
    const auto& key = words[0];
    if (key == "arity" && words.size() == 2) {
      try {
        spec.arity = Arity(parse_int(words[1], lineno));
      } catch (const ValidationError& e) {
        bad_line(lineno, e.what());
      }
      have_arity = true;
    } else if (key == "iota" && words.size() == 2) {
      spec.iota = parse_int(words[1], lineno);
    } else if (key == "cap" && words.size() == 2) {
      spec.cap = parse_int(words[1], lineno);
    } else if (key == "limit") {
      spec.limit = parse_vector(words, 1, lineno);
    } else if (key == "class" && words.size() >= 2) {
      spec.classes.emplace_back(parse_code(words[1], lineno), parse_vector(words, 2, lineno));
    } else {
      bad_line(lineno, "unexpected \"" + key + "\"");
    }
  }
  if (!have_arity) throw ValidationError("tensor spec lacks an arity line");
  validate_tensor_spec(spec);
  return spec;
}

}  // namespace hier
