#include "modinv/modinv.h"

#include <cstring>
#include <optional>
#include <sstream>

#include "modinv/error.hpp"
#include "modinv/registry.hpp"

using namespace modinv;

struct modinv_field {
  Field f;
};

struct modinv_poly {
  Polynomial p;
};

struct modinv_group {
  MatrixGroup g;
  std::optional<GluingGroup> gluing;
  std::optional<MatrixGroup> enumerated;
};

namespace {

thread_local std::string last_error;

modinv_status status_of(ErrorKind k)
{
  return static_cast<modinv_status>(static_cast<int>(k) + 1);
}

template <typename F>
modinv_status guard(F&& body)
{
  try {
    body();
    last_error.clear();
    return MODINV_OK;
  } catch (const Error& e) {
    last_error = std::string(to_string(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("parse: ") + e.what();
    return MODINV_PARSE;
  } catch (const std::exception& e) {
    last_error = std::string("internal: ") + e.what();
    return MODINV_INTERNAL;
  } catch (...) {
    last_error = "internal: unknown exception";
    return MODINV_INTERNAL;
  }
}

void need(const void* p, const char* what)
{
  if (!p)
    fail(ErrorKind::InvalidArgument, std::string(what) + " is NULL");
}

char* dup(const std::string& s)
{
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Json parse_json(const char* text)
{
  if (!text || !*text)
    return Json::object();
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
}

MatrixGroup& enumerated(modinv_group* g, std::uint64_t cap)
{
  if (!g->enumerated)
    g->enumerated = g->g.enumerated(cap ? cap : kDefaultCap);
  return *g->enumerated;
}

} // namespace

extern "C" {

const char* modinv_last_error(void) { return last_error.c_str(); }

const char* modinv_status_name(modinv_status status)
{
  if (status == MODINV_OK)
    return "ok";
  if (status >= MODINV_INVALID_ARGUMENT && status <= MODINV_UNSUPPORTED)
    return to_string(static_cast<ErrorKind>(static_cast<int>(status) - 1));
  return "internal";
}

const char* modinv_version(void) { return "0.1.0"; }

void modinv_string_free(char* s) { std::free(s); }

modinv_status modinv_field_new(uint32_t p, uint32_t r, modinv_field** out)
{
  return guard([&] {
    need(out, "out");
    *out = new modinv_field{Field::build(p, r)};
  });
}

modinv_status modinv_field_from_order(uint64_t q, modinv_field** out)
{
  return guard([&] {
    need(out, "out");
    *out = new modinv_field{Field::from_order(q)};
  });
}

void modinv_field_free(modinv_field* field) { delete field; }

uint64_t modinv_field_order(const modinv_field* field) { return field ? field->f.q() : 0; }

modinv_status modinv_field_describe(const modinv_field* field, char** out)
{
  return guard([&] {
    need(field, "field");
    need(out, "out");
    *out = dup(field->f.describe());
  });
}

modinv_status modinv_poly_parse(const modinv_field* field, const char* space, const char* text, modinv_poly** out)
{
  return guard([&] {
    need(field, "field");
    need(space, "space");
    need(text, "text");
    need(out, "out");
    *out = new modinv_poly{parse_polynomial(field->f, space_from_spec(space), text)};
  });
}

void modinv_poly_free(modinv_poly* poly) { delete poly; }

modinv_status modinv_poly_to_string(const modinv_poly* poly, char** out)
{
  return guard([&] {
    need(poly, "poly");
    need(out, "out");
    *out = dup(poly->p.to_string());
  });
}

modinv_status modinv_poly_to_json(const modinv_poly* poly, char** out)
{
  return guard([&] {
    need(poly, "poly");
    need(out, "out");
    *out = dup(to_json(poly->p).dump());
  });
}

modinv_status modinv_poly_degree(const modinv_poly* poly, int64_t* out)
{
  return guard([&] {
    need(poly, "poly");
    need(out, "out");
    *out = poly->p.degree();
  });
}

modinv_status modinv_poly_equal(const modinv_poly* a, const modinv_poly* b, int* out)
{
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = a->p == b->p;
  });
}

modinv_status modinv_poly_is_invariant(const modinv_poly* poly, const modinv_group* group, int* out)
{
  return guard([&] {
    need(poly, "poly");
    need(group, "group");
    need(out, "out");
    *out = 1;
    for (const auto& g : group->g.generators())
      if (act(poly->p, g) != poly->p) {
        *out = 0;
        break;
      }
  });
}

modinv_status modinv_dickson(const modinv_field* field, size_t n, size_t i, modinv_poly** out)
{
  return guard([&] {
    need(field, "field");
    need(out, "out");
    *out = new modinv_poly{dickson(n, field->f, i)};
  });
}

modinv_status modinv_xi(const modinv_field* field, size_t m, int64_t i, modinv_poly** out)
{
  return guard([&] {
    need(field, "field");
    need(out, "out");
    *out = new modinv_poly{xi(m, field->f, i)};
  });
}

modinv_status modinv_nk(const modinv_poly* t, size_t k, size_t m, modinv_poly** out)
{
  return guard([&] {
    need(t, "t");
    need(out, "out");
    *out = new modinv_poly{n_k(t->p, k, m)};
  });
}

modinv_status modinv_orbit_product(const modinv_poly* l, const modinv_poly* const* basis, size_t count,
                                   modinv_poly** out)
{
  return guard([&] {
    need(l, "l");
    need(out, "out");
    if (count)
      need(basis, "basis");
    std::vector<Polynomial> span;
    for (size_t i = 0; i < count; ++i) {
      need(basis[i], "basis entry");
      span.push_back(basis[i]->p);
    }
    *out = new modinv_poly{orbit_product_fq(l->p, span)};
  });
}

modinv_status modinv_group_new(const modinv_field* field, const char* spec_json, modinv_group** out)
{
  return guard([&] {
    need(field, "field");
    need(out, "out");
    *out = new modinv_group{group_from_spec(field->f, parse_json(spec_json)), std::nullopt, std::nullopt};
  });
}

modinv_status modinv_gluing_new(const modinv_field* field, const char* spec_json, modinv_group** out)
{
  return guard([&] {
    need(field, "field");
    need(out, "out");
    GluingGroup gl = gluing_from_spec(field->f, parse_json(spec_json));
    MatrixGroup realized = gl.realized;
    *out = new modinv_group{std::move(realized), std::move(gl), std::nullopt};
  });
}

void modinv_group_free(modinv_group* group) { delete group; }

modinv_status modinv_group_order(modinv_group* group, uint64_t cap, uint64_t* out)
{
  return guard([&] {
    need(group, "group");
    need(out, "out");
    *out = enumerated(group, cap).order();
  });
}

modinv_status modinv_group_to_json(const modinv_group* group, char** out)
{
  return guard([&] {
    need(group, "group");
    need(out, "out");
    *out = dup(to_json(group->g).dump());
  });
}

modinv_status modinv_gluing_describe(modinv_group* group, uint64_t cap, char** out)
{
  return guard([&] {
    need(group, "group");
    need(out, "out");
    if (!group->gluing)
      fail(ErrorKind::InvalidArgument, "group was not built as a gluing");
    const GluingGroup& gl = *group->gluing;
    Json j = {{"m", gl.m()}, {"n", gl.n()}, {"dim", gl.realized.dim()}, {"module_dim", gl.module.dimension()}};
    j["order"] = enumerated(group, cap).order();
    try {
      j["expected_order"] = gl.expected_order().str();
    } catch (const Error&) {
    }
    Json psi = Json::array();
    try {
      for (std::size_t i = 0; i < gl.m(); ++i)
        psi.push_back(psi_of_y(i, gl).to_string());
      j["psi"] = psi;
    } catch (const Error& e) {
      j["psi_unavailable"] = e.what();
    }
    j["group"] = to_json(gl.realized);
    *out = dup(j.dump());
  });
}

modinv_status modinv_family_json(const modinv_field* field, const char* name, const char* params_json, char** out)
{
  return guard([&] {
    need(field, "field");
    need(name, "name");
    need(out, "out");
    GeneratorFamily fam = family(name, family_params_from_json(parse_json(params_json)), field->f);
    *out = dup(to_json(fam).dump());
  });
}

modinv_status modinv_family_names(char** out)
{
  return guard([&] {
    need(out, "out");
    std::string s;
    for (const auto& n : family_names())
      s += n + "\n";
    *out = dup(s);
  });
}

modinv_status modinv_verify(const char* check, const char* params_json, uint64_t cap, uint32_t degree_bound,
                            uint64_t seed, char** out)
{
  return guard([&] {
    need(check, "check");
    need(out, "out");
    RunOptions o;
    if (cap)
      o.cap = cap;
    if (degree_bound)
      o.degree_bound = degree_bound;
    o.seed = seed;
    *out = dup(run_check(check, parse_json(params_json), o).to_json().dump());
  });
}

modinv_status modinv_check_names(char** out)
{
  return guard([&] {
    need(out, "out");
    std::string s;
    for (const auto& n : check_names())
      s += n + "\n";
    *out = dup(s);
  });
}

modinv_status modinv_run_scenario(const char* text, const modinv_run_options* options, char** jsonl, char** summary,
                                  int* exit_code)
{
  return guard([&] {
    need(text, "text");
    need(jsonl, "jsonl");
    need(summary, "summary");
    need(exit_code, "exit_code");
    Scenario s = parse_scenario(text);
    if (options) {
      if (options->cap)
        s.options.cap = options->cap;
      if (options->degree_bound)
        s.options.degree_bound = options->degree_bound;
      if (options->has_seed)
        s.options.seed = options->seed;
      if (options->workers)
        s.workers = options->workers;
    }
    ScenarioResult r = run_scenario(s);
    std::string lines;
    for (const auto& rep : r.reports)
      lines += rep.to_json().dump() + "\n";
    *jsonl = dup(lines);
    *summary = dup(summary_table(s, r));
    *exit_code = r.exit_code;
  });
}

} // extern "C"
