// SPDX-License-Identifier: Apache-2.0
#include "hier/hier.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "hier/bithorn.hpp"
#include "hier/orbitstats.hpp"
#include "hier/spherical.hpp"

struct hier_element {
  hier::Spheromorphism value;
};

struct hier_clopen {
  hier::ClopenSet value;
};

struct hier_phi {
  hier::SphericalFunction value;
};

namespace {

thread_local std::string last_error;

hier_status fail(hier_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

template <typename F>
hier_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return HIER_OK;
  } catch (const hier::ValidationError& e) {
    return fail(HIER_E_VALIDATION, e.what());
  } catch (const hier::DomainError& e) {
    return fail(HIER_E_DOMAIN, e.what());
  } catch (const hier::ArityMismatch& e) {
    return fail(HIER_E_ARITY, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HIER_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HIER_E_INTERNAL, e.what());
  } catch (...) {
    return fail(HIER_E_INTERNAL, "unknown failure");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define HIER_REQUIRE(cond)                                                   \
  do {                                                                       \
    if (!(cond)) return fail(HIER_E_ARGUMENT, "invalid argument: " #cond);   \
  } while (0)

hier_element* wrap(hier::Spheromorphism g) { return new hier_element{std::move(g)}; }

}  // namespace

extern "C" {

const char* hier_last_error(void) { return last_error.c_str(); }

void hier_string_free(char* s) { std::free(s); }

hier_status hier_element_parse(const char* text, hier_element** out) {
  HIER_REQUIRE(text && out);
  return guarded([&] { *out = wrap(hier::element_from_text(text)); });
}

hier_status hier_element_identity(int arity, hier_element** out) {
  HIER_REQUIRE(out);
  return guarded([&] { *out = wrap(hier::Spheromorphism::identity(hier::Arity(arity))); });
}

hier_status hier_element_random(int arity, size_t budget, uint64_t seed, hier_element** out) {
  HIER_REQUIRE(out);
  return guarded([&] { *out = wrap(hier::random_element(hier::Arity(arity), budget, seed)); });
}

hier_status hier_element_translation(int arity, hier_element** out) {
  HIER_REQUIRE(out);
  return guarded([&] { *out = wrap(hier::hyperbolic_translation(hier::Arity(arity))); });
}

void hier_element_free(hier_element* g) { delete g; }

hier_status hier_element_serialize(const hier_element* g, char** out) {
  HIER_REQUIRE(g && out);
  return guarded([&] { *out = dup(hier::to_text(g->value)); });
}

int hier_element_arity(const hier_element* g) { return g ? g->value.arity().n() : 0; }

hier_status hier_element_compose(const hier_element* g, const hier_element* h,
                                 hier_element** out) {
  HIER_REQUIRE(g && h && out);
  return guarded([&] { *out = wrap(hier::compose(g->value, h->value)); });
}

hier_status hier_element_invert(const hier_element* g, hier_element** out) {
  HIER_REQUIRE(g && out);
  return guarded([&] { *out = wrap(hier::invert(g->value)); });
}

hier_status hier_element_equals(const hier_element* g, const hier_element* h, int* out) {
  HIER_REQUIRE(g && h && out);
  return guarded([&] { *out = hier::equals(g->value, h->value) ? 1 : 0; });
}

hier_status hier_element_is_automorphism(const hier_element* g, int* out) {
  HIER_REQUIRE(g && out);
  return guarded([&] { *out = hier::is_automorphism(g->value) ? 1 : 0; });
}

hier_status hier_element_parity(const hier_element* g, int* out) {
  HIER_REQUIRE(g && out);
  return guarded([&] { *out = hier::automorphism_parity(g->value).value_or(-1); });
}

hier_status hier_element_coset_code(const hier_element* g, char** out) {
  HIER_REQUIRE(g && out);
  return guarded([&] { *out = dup(hier::coset_code(g->value).token); });
}

hier_status hier_element_bithorn(const hier_element* g, int reduced, int dot, char** out) {
  HIER_REQUIRE(g && out);
  return guarded([&] {
    auto b = hier::bithorn_of(g->value).bithorn;
    if (reduced) b = hier::reduce_bithorn(b);
    *out = dup(dot ? hier::to_dot(b) : hier::describe(b));
  });
}

hier_status hier_element_truncated_action(const hier_element* g, size_t depth, char** out) {
  HIER_REQUIRE(g && out);
  return guarded([&] {
    std::string text;
    for (const auto& [w, img] : hier::truncated_action(g->value, depth)) {
      text += w.word() + " -> " + img.word() + "\n";
    }
    *out = dup(text);
  });
}

size_t hier_thompson_generator_count(void) { return hier::thompson_generators().size(); }

hier_status hier_thompson_generator(size_t index, hier_element** out, char** name) {
  HIER_REQUIRE(out);
  return guarded([&] {
    auto gens = hier::thompson_generators();
    if (index >= gens.size()) throw hier::DomainError("no generator with that index");
    if (name) *name = dup(gens[index].name);
    *out = wrap(std::move(gens[index].element));
  });
}

hier_status hier_clopen_parse(const char* text, hier_clopen** out) {
  HIER_REQUIRE(text && out);
  return guarded([&] { *out = new hier_clopen{hier::clopen_from_text(text)}; });
}

void hier_clopen_free(hier_clopen* omega) { delete omega; }

hier_status hier_clopen_serialize(const hier_clopen* omega, char** out) {
  HIER_REQUIRE(omega && out);
  return guarded([&] { *out = dup(hier::to_text(omega->value)); });
}

hier_status hier_clopen_upsilon(const hier_clopen* omega, int* out) {
  HIER_REQUIRE(omega && out);
  return guarded([&] { *out = hier::upsilon(omega->value); });
}

hier_status hier_clopen_classify(const hier_clopen* omega, char** token) {
  HIER_REQUIRE(omega && token);
  return guarded([&] { *token = dup(hier::classify_clopen(omega->value).token()); });
}

hier_status hier_clopen_thorn(const hier_clopen* omega, int dot, char** out) {
  HIER_REQUIRE(omega && out);
  return guarded([&] {
    const auto s = hier::maximal_thorn(omega->value);
    *out = dup(dot ? hier::to_dot(s) : hier::to_text(s));
  });
}

hier_status hier_clopen_act(const hier_element* g, const hier_clopen* omega, hier_clopen** out) {
  HIER_REQUIRE(g && omega && out);
  return guarded([&] { *out = new hier_clopen{hier::act_on_clopen(g->value, omega->value)}; });
}

hier_status hier_enum_thorns(const char* pattern_token, const char* region_text, int radius,
                             char** out) {
  HIER_REQUIRE(pattern_token && region_text && out);
  return guarded([&] {
    const auto pattern = [&] {
      try {
        return hier::ThornCode::from_token(pattern_token);
      } catch (const hier::ValidationError& e) {
        throw hier::ValidationError(std::string("pattern: ") + e.what());
      }
    }();
    const auto region = hier::subthorn_from_text(region_text);
    std::string text;
    for (const auto& s : hier::enumerate_embeddings(pattern, region, radius)) {
      text += "vertices";
      for (const auto& v : s.vertices()) text += " " + hier::vertex_token(v);
      text += " ; spikes";
      for (const auto& b : s.spikes()) text += " " + hier::spike_token(b);
      text += "\n";
    }
    *out = dup(text);
  });
}

hier_status hier_reduced_classes(int arity, int max_vertices, int iota, char** out) {
  HIER_REQUIRE(out && max_vertices >= 1);
  return guarded([&] {
    std::optional<int> residue;
    if (iota >= 0) residue = iota;
    std::string text;
    for (const auto& c : hier::reduced_classes(hier::Arity(arity), max_vertices, residue)) {
      text += c.token() + " " + std::to_string(c.vertex_count()) + " " +
              std::to_string(c.spike_count()) + "\n";
    }
    *out = dup(text);
  });
}

hier_status hier_theta(const hier_element* g, const char* table_text, int brute_depth,
                       char** out) {
  HIER_REQUIRE(g && table_text && out);
  return guarded([&] {
    const auto table = hier::class_table_from_text(table_text);
    const auto t = brute_depth > 0 ? hier::theta_bruteforce(g->value, table, brute_depth)
                                   : hier::theta(g->value, table);
    *out = dup(hier::to_text(t, table));
  });
}

hier_status hier_spec_validate(const char* spec_text, double tol, int* valid, char** report) {
  HIER_REQUIRE(spec_text && valid);
  return guarded([&] {
    const auto v = hier::validate_spec(hier::spherical_spec_from_text(spec_text), tol);
    *valid = v.valid ? 1 : 0;
    if (report) {
      std::ostringstream os;
      for (const auto& p : v.problems) os << "problem: " << p << '\n';
      os << "min_eig=" << v.min_eigenvalue << "\nverdict=" << (v.valid ? "VALID" : "INVALID")
         << '\n';
      *report = dup(os.str());
    }
  });
}

hier_status hier_phi_nessonov(const char* spec_text, hier_phi** out) {
  HIER_REQUIRE(spec_text && out);
  return guarded([&] {
    *out = new hier_phi{
        hier::SphericalFunction::nessonov(hier::spherical_spec_from_text(spec_text))};
  });
}

hier_status hier_phi_tensor(const char* tensor_text, hier_phi** out) {
  HIER_REQUIRE(tensor_text && out);
  return guarded([&] {
    *out = new hier_phi{hier::SphericalFunction::tensor(hier::tensor_spec_from_text(tensor_text))};
  });
}

hier_status hier_phi_l2(hier_phi** out) {
  HIER_REQUIRE(out);
  return guarded([&] { *out = new hier_phi{hier::SphericalFunction::l2()}; });
}

hier_status hier_phi_product(const hier_phi* a, const hier_phi* b, hier_phi** out) {
  HIER_REQUIRE(a && b && out);
  return guarded([&] { *out = new hier_phi{hier::SphericalFunction::product(a->value, b->value)}; });
}

void hier_phi_free(hier_phi* phi) { delete phi; }

hier_status hier_phi_eval(const hier_phi* phi, const hier_element* g, double* out) {
  HIER_REQUIRE(phi && g && out);
  return guarded([&] { *out = phi->value(g->value); });
}

hier_status hier_tensor_eval(const char* tensor_text, const hier_element* g, double* value,
                             int* cap_lumped) {
  HIER_REQUIRE(tensor_text && g && value);
  return guarded([&] {
    const auto v = hier::phi_tensor(g->value, hier::tensor_spec_from_text(tensor_text));
    *value = v.value;
    if (cap_lumped) *cap_lumped = v.cap_lumped ? 1 : 0;
  });
}

hier_status hier_gram_check(const hier_phi* phi, const hier_element* const* elements,
                            size_t count, double tol, int* pass, char** report) {
  HIER_REQUIRE(phi && pass && (elements || count == 0));
  return guarded([&] {
    std::vector<hier::Spheromorphism> elems;
    for (size_t i = 0; i < count; ++i) {
      if (elements[i] == nullptr) throw hier::ValidationError("null element in gram set");
      elems.push_back(elements[i]->value);
    }
    const auto r = hier::gram_psd_check(elems, phi->value, tol);
    *pass = r.pass ? 1 : 0;
    if (report) *report = dup(hier::to_text(r));
  });
}

}  // extern "C"
