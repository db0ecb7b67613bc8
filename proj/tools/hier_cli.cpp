// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hier/hier.h"

namespace {

namespace fs = std::filesystem;

// Carries an exit code out of a subcommand.
struct Exit {
  int code;
};

int exit_code(hier_status s) { return s == HIER_E_INTERNAL ? 2 : 1; }

void check(hier_status s, const std::string& context) {
  if (s == HIER_OK) return;
  std::cerr << "error: " << context << ": " << hier_last_error() << '\n';
  throw Exit{exit_code(s)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: " << path << ": cannot open\n";
    throw Exit{1};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ElementDeleter {
  void operator()(hier_element* g) const { hier_element_free(g); }
};
struct ClopenDeleter {
  void operator()(hier_clopen* c) const { hier_clopen_free(c); }
};
struct PhiDeleter {
  void operator()(hier_phi* p) const { hier_phi_free(p); }
};
using Element = std::unique_ptr<hier_element, ElementDeleter>;
using Clopen = std::unique_ptr<hier_clopen, ClopenDeleter>;
using Phi = std::unique_ptr<hier_phi, PhiDeleter>;

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  hier_string_free(s);
  return out;
}

Element load_element(const std::string& path) {
  hier_element* g = nullptr;
  check(hier_element_parse(slurp(path).c_str(), &g), path);
  return Element(g);
}

Clopen load_clopen(const std::string& path) {
  hier_clopen* c = nullptr;
  check(hier_clopen_parse(slurp(path).c_str(), &c), path);
  return Clopen(c);
}

std::string serialize(const hier_element* g) {
  char* out = nullptr;
  check(hier_element_serialize(g, &out), "serialize");
  return take(out);
}

void print_bool(bool b) { std::cout << (b ? "true" : "false") << '\n'; }

// "l2", "nessonov:FILE" or "tensor:FILE".
Phi load_phi(const std::string& spec) {
  hier_phi* p = nullptr;
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const std::string file = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (family == "l2" && file.empty()) {
    check(hier_phi_l2(&p), "phi l2");
  } else if (family == "nessonov" && !file.empty()) {
    check(hier_phi_nessonov(slurp(file).c_str(), &p), file);
  } else if (family == "tensor" && !file.empty()) {
    check(hier_phi_tensor(slurp(file).c_str(), &p), file);
  } else {
    std::cerr << "error: bad spherical function \"" << spec
              << "\" (use l2, nessonov:FILE or tensor:FILE)\n";
    throw Exit{1};
  }
  return Phi(p);
}

Phi load_product(const std::vector<std::string>& factors) {
  Phi acc = load_phi(factors.at(0));
  for (std::size_t i = 1; i < factors.size(); ++i) {
    Phi next = load_phi(factors[i]);
    hier_phi* p = nullptr;
    check(hier_phi_product(acc.get(), next.get(), &p), "phi product");
    acc.reset(p);
  }
  return acc;
}

std::vector<std::string> expand_paths(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> files;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file()) files.push_back(e.path().string());
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(in);
    }
  }
  return out;
}

std::size_t table_depth(const std::string& text) {
  std::size_t depth = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line.substr(0, line.find('#')));
    std::string a, arrow, b;
    if ((ls >> a >> arrow >> b) && arrow == "->") depth = std::max(depth, a.size());
  }
  return depth;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spheromorphisms of regular trees: group law, double cosets, spherical functions"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::size_t> depth;
  app.add_option("--depth", depth, "Oracle truncation depth (default: table depth)");

  std::vector<std::string> files;
  std::string file_a, file_b;
  bool dot = false;
  std::string spec_file;
  std::vector<std::string> factors;
  double tol = 1e-8;
  int brute = 0;
  int arity = 2;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::string pattern;
  int radius = 0;
  int max_vertices = 3;
  int iota = -1;

  auto* validate = app.add_subcommand("validate", "Check an element file and print its table");
  validate->add_option("element", file_a)->required();

  auto* compose = app.add_subcommand("compose", "Compose elements; the last one acts first");
  compose->add_option("elements", files)->required()->expected(2, -1);

  auto* invert = app.add_subcommand("invert", "Print the inverse element");
  invert->add_option("element", file_a)->required();

  auto* equals = app.add_subcommand("equals", "Compare two elements as boundary maps");
  equals->add_option("first", file_a)->required();
  equals->add_option("second", file_b)->required();

  auto* canon = app.add_subcommand("canon", "Print the double-coset code");
  canon->add_option("element", file_a)->required();
  canon->add_flag("--dot", dot, "Print the minimal bi-thorn as a DOT graph instead");
  bool describe_flag = false;
  bool unreduced = false;
  canon->add_flag("--describe", describe_flag, "Print the minimal bi-thorn as text");
  canon->add_flag("--unreduced", unreduced, "Show the bi-thorn before reduction");

  auto* is_aut = app.add_subcommand("is-aut", "Decide membership in the automorphism group");
  is_aut->add_option("element", file_a)->required();
  bool parity = false;
  is_aut->add_flag("--parity", parity, "Also print the colour parity");

  auto* classify = app.add_subcommand("classify-clopen", "Print the thorn class of a clopen set");
  classify->add_option("clopen", file_a)->required();
  classify->add_flag("--dot", dot, "Print the reduced thorn as a DOT graph instead");
  bool thorn_text = false;
  classify->add_flag("--thorn", thorn_text, "Print the reduced thorn as sub-thorn text");

  auto* ups = app.add_subcommand("upsilon", "Print the ball-count residue of a clopen set");
  ups->add_option("clopen", file_a)->required();

  auto* act = app.add_subcommand("act", "Apply an element to a clopen set");
  act->add_option("element", file_a)->required();
  act->add_option("clopen", file_b)->required();

  auto* theta = app.add_subcommand("theta", "Orbit transition counts");
  theta->add_option("element", file_a)->required();
  theta->add_option("table", file_b, "Class table or spherical spec file")->required();
  theta->add_option("--brute", brute, "Use the brute-force oracle with this depth cap");

  auto* phi = app.add_subcommand("phi", "Evaluate a spherical function");
  std::string family;
  phi->add_option("family", family, "nessonov | tensor | l2 | product")
      ->required()
      ->check(CLI::IsMember({"nessonov", "tensor", "l2", "product"}));
  phi->add_option("element", file_a)->required();
  phi->add_option("--spec", spec_file, "Spec file for nessonov and tensor");
  phi->add_option("--factor", factors, "Factor of a product: l2, nessonov:FILE, tensor:FILE");

  auto* gram = app.add_subcommand("gram", "Gram-matrix positive-semidefiniteness check");
  gram->add_option("elements", files, "Element files or directories")->required();
  gram->add_option("--phi", factors, "l2, nessonov:FILE or tensor:FILE; repeat for a product")
      ->required();
  gram->add_option("--tol", tol, "Relative tolerance");

  auto* spec_check = app.add_subcommand("spec-check", "Validate a spherical spec");
  spec_check->add_option("spec", file_a)->required();
  spec_check->add_option("--tol", tol, "Relative tolerance");

  auto* enum_thorns = app.add_subcommand("enum-thorns", "List embeddings of a thorn class");
  enum_thorns->add_option("--pattern", pattern, "Class token")->required();
  enum_thorns->add_option("--region", file_b, "Sub-thorn file")->required();
  enum_thorns->add_option("--radius", radius, "Search radius")->required();

  auto* classes = app.add_subcommand("classes", "List reduced thorn classes");
  classes->add_option("--arity", arity)->required();
  classes->add_option("--max-vertices", max_vertices);
  classes->add_option("--iota", iota);

  auto* random = app.add_subcommand("random-element", "Print a seeded random element");
  random->add_option("--arity", arity)->required();
  random->add_option("--budget", budget, "Maximum number of table rows")->required();
  random->add_option("--seed", seed)->required();

  auto* gens = app.add_subcommand("thompson-gens", "Print the generators of Thompson's group T");
  std::string out_dir;
  gens->add_option("--out-dir", out_dir, "Write one file per generator here");

  auto* oracle = app.add_subcommand("oracle", "Dump the truncated action on words");
  oracle->add_option("element", file_a)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) {
      std::cout << serialize(load_element(file_a).get());
    } else if (compose->parsed()) {
      Element acc = load_element(files.back());
      for (auto it = files.rbegin() + 1; it != files.rend(); ++it) {
        Element g = load_element(*it);
        hier_element* out = nullptr;
        check(hier_element_compose(g.get(), acc.get(), &out), "compose");
        acc.reset(out);
      }
      std::cout << serialize(acc.get());
    } else if (invert->parsed()) {
      Element g = load_element(file_a);
      hier_element* out = nullptr;
      check(hier_element_invert(g.get(), &out), "invert");
      std::cout << serialize(Element(out).get());
    } else if (equals->parsed()) {
      Element g = load_element(file_a);
      Element h = load_element(file_b);
      int eq = 0;
      check(hier_element_equals(g.get(), h.get(), &eq), "equals");
      print_bool(eq);
    } else if (canon->parsed()) {
      Element g = load_element(file_a);
      char* out = nullptr;
      if (dot || describe_flag) {
        check(hier_element_bithorn(g.get(), unreduced ? 0 : 1, dot ? 1 : 0, &out), "canon");
      } else {
        check(hier_element_coset_code(g.get(), &out), "canon");
      }
      const std::string text = take(out);
      std::cout << text << (dot || describe_flag ? "" : "\n");
    } else if (is_aut->parsed()) {
      Element g = load_element(file_a);
      int aut = 0;
      check(hier_element_is_automorphism(g.get(), &aut), "is-aut");
      print_bool(aut);
      if (parity) {
        int p = -1;
        check(hier_element_parity(g.get(), &p), "parity");
        std::cout << "parity=" << (p < 0 ? std::string("mixed") : std::to_string(p)) << '\n';
      }
    } else if (classify->parsed()) {
      Clopen c = load_clopen(file_a);
      char* out = nullptr;
      if (dot || thorn_text) {
        check(hier_clopen_thorn(c.get(), dot ? 1 : 0, &out), file_a);
        std::cout << take(out);
      } else {
        check(hier_clopen_classify(c.get(), &out), file_a);
        std::cout << take(out) << '\n';
      }
    } else if (ups->parsed()) {
      Clopen c = load_clopen(file_a);
      int u = 0;
      check(hier_clopen_upsilon(c.get(), &u), file_a);
      std::cout << u << '\n';
    } else if (act->parsed()) {
      Element g = load_element(file_a);
      Clopen c = load_clopen(file_b);
      hier_clopen* out = nullptr;
      check(hier_clopen_act(g.get(), c.get(), &out), "act");
      Clopen image(out);
      char* text = nullptr;
      check(hier_clopen_serialize(image.get(), &text), "act");
      std::cout << take(text);
    } else if (theta->parsed()) {
      Element g = load_element(file_a);
      char* out = nullptr;
      check(hier_theta(g.get(), slurp(file_b).c_str(), brute, &out), file_b);
      std::cout << take(out);
    } else if (phi->parsed()) {
      Element g = load_element(file_a);
      double value = 0.0;
      if (family == "tensor") {
        if (spec_file.empty()) {
          std::cerr << "error: phi tensor needs --spec\n";
          throw Exit{1};
        }
        int lumped = 0;
        check(hier_tensor_eval(slurp(spec_file).c_str(), g.get(), &value, &lumped), spec_file);
        std::printf("%.17g\n", value);
        if (lumped) std::cout << "cap-lumped\n";
      } else {
        Phi f;
        if (family == "product") {
          if (factors.size() < 2) {
            std::cerr << "error: phi product needs at least two --factor options\n";
            throw Exit{1};
          }
          f = load_product(factors);
        } else if (family == "l2") {
          f = load_phi("l2");
        } else {
          if (spec_file.empty()) {
            std::cerr << "error: phi nessonov needs --spec\n";
            throw Exit{1};
          }
          f = load_phi("nessonov:" + spec_file);
        }
        check(hier_phi_eval(f.get(), g.get(), &value), "phi");
        std::printf("%.17g\n", value);
      }
    } else if (gram->parsed()) {
      Phi f = load_product(factors);
      std::vector<Element> owned;
      std::vector<const hier_element*> elems;
      for (const auto& path : expand_paths(files)) {
        owned.push_back(load_element(path));
        elems.push_back(owned.back().get());
      }
      int pass = 0;
      char* report = nullptr;
      check(hier_gram_check(f.get(), elems.data(), elems.size(), tol, &pass, &report), "gram");
      std::cout << take(report);
    } else if (spec_check->parsed()) {
      int valid = 0;
      char* report = nullptr;
      check(hier_spec_validate(slurp(file_a).c_str(), tol, &valid, &report), file_a);
      std::cout << take(report);
      if (!valid) return 1;
    } else if (enum_thorns->parsed()) {
      char* out = nullptr;
      check(hier_enum_thorns(pattern.c_str(), slurp(file_b).c_str(), radius, &out), file_b);
      std::cout << take(out);
    } else if (classes->parsed()) {
      char* out = nullptr;
      check(hier_reduced_classes(arity, max_vertices, iota, &out), "classes");
      std::cout << take(out);
    } else if (random->parsed()) {
      hier_element* g = nullptr;
      check(hier_element_random(arity, budget, seed, &g), "random-element");
      std::cout << serialize(Element(g).get());
    } else if (gens->parsed()) {
      const std::size_t count = hier_thompson_generator_count();
      for (std::size_t i = 0; i < count; ++i) {
        hier_element* g = nullptr;
        char* name = nullptr;
        check(hier_thompson_generator(i, &g, &name), "thompson-gens");
        Element owned(g);
        const std::string label = take(name);
        const std::string text = serialize(owned.get());
        if (out_dir.empty()) {
          std::cout << "# " << label << '\n' << text;
        } else {
          const auto path = fs::path(out_dir) / (label + ".txt");
          std::ofstream(path) << text;
          std::cout << path.string() << '\n';
        }
      }
    } else if (oracle->parsed()) {
      const std::string text = slurp(file_a);
      hier_element* raw = nullptr;
      check(hier_element_parse(text.c_str(), &raw), file_a);
      Element g(raw);
      char* out = nullptr;
      check(hier_element_truncated_action(g.get(), depth.value_or(table_depth(text)), &out),
            "oracle");
      std::cout << take(out);
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return 0;
}
