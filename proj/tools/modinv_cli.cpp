#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "modinv/modinv.h"

using Json = nlohmann::ordered_json;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(modinv_status s, const std::string& context)
{
  if (s != MODINV_OK)
    throw CliError(context + ": " + modinv_last_error());
}

std::string take(char* s)
{
  std::string out = s ? s : "";
  modinv_string_free(s);
  return out;
}

using FieldPtr = std::unique_ptr<modinv_field, decltype(&modinv_field_free)>;
using PolyPtr = std::unique_ptr<modinv_poly, decltype(&modinv_poly_free)>;
using GroupPtr = std::unique_ptr<modinv_group, decltype(&modinv_group_free)>;

struct Globals {
  std::string field;
  std::uint64_t cap = 0;
  std::uint32_t degree_bound = 0;
  std::uint64_t seed = 20240611;
  CLI::Option* seed_opt = nullptr;
  std::string json_path;
};

// --q wins over --field p,r; the default is F_2.
FieldPtr make_field(const Globals& g, std::uint64_t q)
{
  modinv_field* f = nullptr;
  if (q) {
    check(modinv_field_from_order(q, &f), "field");
  } else if (!g.field.empty()) {
    auto comma = g.field.find(',');
    std::uint32_t p = 0, r = 1;
    try {
      p = static_cast<std::uint32_t>(std::stoul(g.field.substr(0, comma)));
      if (comma != std::string::npos)
        r = static_cast<std::uint32_t>(std::stoul(g.field.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw CliError("--field expects p,r");
    }
    check(modinv_field_new(p, r, &f), "field");
  } else {
    check(modinv_field_from_order(2, &f), "field");
  }
  return FieldPtr(f, modinv_field_free);
}

PolyPtr parse_poly(const modinv_field* f, const std::string& space, const std::string& text)
{
  modinv_poly* p = nullptr;
  check(modinv_poly_parse(f, space.c_str(), text.c_str(), &p), "parse '" + text + "'");
  return PolyPtr(p, modinv_poly_free);
}

void emit_poly(const modinv_poly* p, const std::string& format)
{
  char* s = nullptr;
  if (format == "json")
    check(modinv_poly_to_json(p, &s), "json");
  else
    check(modinv_poly_to_string(p, &s), "format");
  std::cout << take(s) << "\n";
}

void write_file(const std::string& path, const std::string& text)
{
  if (path.empty())
    return;
  std::ofstream out(path);
  if (!out)
    throw CliError("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw CliError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty())
      out.push_back(item);
  return out;
}

// "1,0;0,1" -> [["1","0"],["0","1"]]
Json matrix_rows(const std::string& text)
{
  Json rows = Json::array();
  for (const auto& row : split(text, ';')) {
    Json r = Json::array();
    for (const auto& e : split(row, ','))
      r.push_back(e.substr(e.find_first_not_of(' ')));
    rows.push_back(r);
  }
  return rows;
}

// Bases from a file: one matrix per non-empty line in the text format, or a JSON array.
Json basis_from_file(const std::string& path)
{
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[')
    return Json::parse(text);
  Json basis = Json::array();
  for (const auto& line : split(text, '\n'))
    if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t")] != '#')
      basis.push_back(matrix_rows(line));
  return basis;
}

Json parse_value(const std::string& v)
{
  try {
    return Json::parse(v);
  } catch (const nlohmann::json::parse_error&) {
    return v;
  }
}

Json group_json(const std::string& kind, std::size_t n, std::size_t m, std::size_t k, const std::string& partition)
{
  Json spec = {{"kind", kind}};
  if (n)
    spec["n"] = n;
  if (m)
    spec["m"] = m;
  if (k)
    spec["k"] = k;
  if (!partition.empty())
    spec["partition"] = Json::parse("[" + partition + "]");
  return spec;
}

int run_scenario_file(const Globals& g, const std::string& path, unsigned workers, bool human)
{
  std::string text = read_file(path);
  modinv_run_options o{};
  o.cap = g.cap;
  o.degree_bound = g.degree_bound;
  o.seed = g.seed;
  o.has_seed = g.seed_opt && g.seed_opt->count() > 0;
  o.workers = workers;
  char* jsonl = nullptr;
  char* summary = nullptr;
  int code = 0;
  check(modinv_run_scenario(text.c_str(), &o, &jsonl, &summary, &code), path);
  std::string lines = take(jsonl);
  std::string table = take(summary);
  write_file(g.json_path, lines);
  if (human) {
    std::cout << table;
    for (const auto& line : split(lines, '\n')) {
      Json r = Json::parse(line);
      if (r["status"] == "fail")
        std::cout << "  " << r["check"].get<std::string>() << " witness: " << r["witness"].get<std::string>() << "\n";
      else if (r["status"] == "skipped")
        std::cout << "  " << r["check"].get<std::string>() << " skipped: " << r["reason"].get<std::string>() << "\n";
    }
  } else {
    std::cout << lines;
    std::cerr << table;
  }
  return code;
}

} // namespace

// Pulls `--key value` pairs after `verify <check>` out of argv, leaving the
// flags CLI11 knows about.
std::vector<std::string> split_verify_params(int argc, char** argv, Json& params)
{
  static const std::vector<std::string> known = {"--field", "--cap", "--degree-bound", "--seed", "--json",
                                                  "--params"};
  std::vector<std::string> args(argv, argv + argc);
  auto it = std::find(args.begin() + 1, args.end(), "verify");
  if (it == args.end() || std::next(it) == args.end())
    return args;
  std::size_t start = static_cast<std::size_t>(it - args.begin()) + 2;
  std::vector<std::string> kept(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(start));
  for (std::size_t i = start; i < args.size(); ++i) {
    std::string a = args[i];
    std::string value;
    bool inline_value = false;
    if (auto eq = a.find('='); a.rfind("--", 0) == 0 && eq != std::string::npos) {
      value = a.substr(eq + 1);
      a = a.substr(0, eq);
      inline_value = true;
    }
    if (std::find(known.begin(), known.end(), a) != known.end() || a == "--help" || a == "-h" ||
        a.rfind("--", 0) != 0) {
      kept.push_back(args[i]);
      if (!inline_value && a.rfind("--", 0) == 0 && a != "--help" && i + 1 < args.size())
        kept.push_back(args[++i]);
      continue;
    }
    if (!inline_value) {
      if (i + 1 >= args.size())
        throw CliError("missing value for " + a);
      value = args[++i];
    }
    params[a.substr(2)] = parse_value(value);
  }
  return kept;
}

int main(int argc, char** argv)
{
  CLI::App app{"Modular invariant theory workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--field", g.field, "Field as p,r");
  app.add_option("--cap", g.cap, "Enumeration cap");
  app.add_option("--degree-bound", g.degree_bound, "Degree bound for dimension and transfer checks");
  g.seed_opt = app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--json", g.json_path, "Also write JSON output to this file");

  int exit_code = 0;
  std::uint64_t q = 0;
  std::string format = "text";

  // field
  auto* field_cmd = app.add_subcommand("field", "Describe a finite field");
  field_cmd->add_option("--q", q, "Field order");
  field_cmd->callback([&] {
    auto f = make_field(g, q);
    char* s = nullptr;
    check(modinv_field_describe(f.get(), &s), "field");
    std::string d = take(s);
    std::cout << d << "\n";
    write_file(g.json_path, Json{{"q", modinv_field_order(f.get())}, {"description", d}}.dump() + "\n");
  });

  // group
  std::string kind;
  std::size_t gn = 0, gm = 0, gk = 0;
  std::string partition;
  auto* group_cmd = app.add_subcommand("group", "Named matrix groups");
  group_cmd->require_subcommand(1);
  for (const char* action : {"order", "show"}) {
    auto* sub = group_cmd->add_subcommand(action, action == std::string("order") ? "Order by enumeration"
                                                                                 : "Generators as JSON");
    sub->add_option("--kind", kind, "gl, u, sp, usp, pk, gk, spstab, o3ex, o4ex, para, trivial")->required();
    sub->add_option("--n", gn);
    sub->add_option("--m", gm);
    sub->add_option("--k", gk);
    sub->add_option("--partition", partition, "Comma-separated flag sizes");
    sub->add_option("--q", q);
    std::string act = action;
    sub->callback([&, act] {
      auto f = make_field(g, q);
      std::string spec = group_json(kind, gn, gm, gk, partition).dump();
      modinv_group* raw = nullptr;
      check(modinv_group_new(f.get(), spec.c_str(), &raw), "group");
      GroupPtr grp(raw, modinv_group_free);
      if (act == "order") {
        std::uint64_t order = 0;
        check(modinv_group_order(grp.get(), g.cap, &order), "group order");
        std::cout << order << "\n";
        write_file(g.json_path, Json{{"group", Json::parse(spec)}, {"order", order}}.dump() + "\n");
      } else {
        char* s = nullptr;
        check(modinv_group_to_json(grp.get(), &s), "group");
        std::string j = take(s);
        std::cout << Json::parse(j).dump(2) << "\n";
        write_file(g.json_path, j + "\n");
      }
    });
  }

  // glue
  std::string g1 = R"({"kind":"u","n":2})", g2 = R"({"kind":"u","n":2})", gd = R"({"kind":"gl","n":1})";
  std::string module_kind = "full", diag_module = "scalar", basis_file, form = "alternating", gram;
  std::uint32_t q_sub = 0, thin_p = 2, thin_r = 1;
  auto* glue_cmd = app.add_subcommand("glue", "Build a gluing and print its order and psi images");
  glue_cmd->require_subcommand(1);
  auto glue_run = [&](const Json& spec) {
    auto f = make_field(g, q);
    std::string s = spec.dump();
    modinv_group* raw = nullptr;
    check(modinv_gluing_new(f.get(), s.c_str(), &raw), "glue");
    GroupPtr grp(raw, modinv_group_free);
    char* out = nullptr;
    check(modinv_gluing_describe(grp.get(), g.cap, &out), "glue");
    Json d = Json::parse(take(out));
    std::cout << "dimension " << d["dim"] << " (" << d["m"] << " + " << d["n"] << ")\n";
    std::cout << "order " << d["order"] << "\n";
    if (d.contains("psi"))
      for (std::size_t i = 0; i < d["psi"].size(); ++i)
        std::cout << "psi(y" << i + 1 << ") = " << d["psi"][i].get<std::string>() << "\n";
    write_file(g.json_path, d.dump() + "\n");
  };
  auto module_json = [&](const std::string& kind_name) {
    Json mod = {{"kind", kind_name}};
    if (q_sub)
      mod["q_sub"] = q_sub;
    if (!partition.empty())
      mod["partition"] = Json::parse("[" + partition + "]");
    if (!basis_file.empty()) {
      mod["kind"] = "explicit";
      mod["basis"] = basis_from_file(basis_file);
    }
    return mod;
  };
  {
    auto* sub = glue_cmd->add_subcommand("glue", "G1 x_M G2");
    sub->add_option("--g1", g1, "Group spec JSON");
    sub->add_option("--g2", g2, "Group spec JSON");
    sub->add_option("--module", module_kind, "full, zero, subfield, parabolic, explicit");
    sub->add_option("--q-sub", q_sub);
    sub->add_option("--basis", basis_file, "File with one matrix per line");
    sub->add_option("--partition", partition);
    sub->add_option("--q", q);
    sub->callback([&] {
      glue_run(Json{{"type", "glue"}, {"g1", Json::parse(g1)}, {"g2", Json::parse(g2)}, {"module", module_json(module_kind)}});
    });
  }
  {
    auto* sub = glue_cmd->add_subcommand("diag-glue", "Diagonal gluing G x_M G");
    sub->add_option("--g", gd, "Group spec JSON");
    sub->add_option("--module", diag_module, "scalar, full, explicit");
    sub->add_option("--basis", basis_file);
    sub->add_option("--q", q);
    sub->callback([&] { glue_run(Json{{"type", "diag"}, {"g", Json::parse(gd)}, {"module", module_json(diag_module)}}); });
  }
  {
    auto* sub = glue_cmd->add_subcommand("thin-glue", "Regular-representation thin gluing");
    sub->add_option("--p", thin_p);
    sub->add_option("--r", thin_r);
    sub->callback([&] {
      q = thin_p;
      glue_run(Json{{"type", "thin"}, {"p", thin_p}, {"r", thin_r}});
    });
  }
  {
    auto* sub = glue_cmd->add_subcommand("para-glue", "Parabolic gluing for a flag");
    sub->add_option("--partition", partition)->required();
    sub->add_option("--q", q);
    sub->callback([&] {
      glue_run(Json{{"type", "para"}, {"partition", Json::parse("[" + partition + "]")}});
    });
  }
  {
    auto* sub = glue_cmd->add_subcommand("singular", "Isometry group of a singular form");
    sub->add_option("--form", form, "alternating, symmetric, hermitian");
    sub->add_option("--gram", gram, "Gram matrix, rows separated by ';'")->required();
    sub->add_option("--q", q);
    sub->callback([&] {
      Json spec = {{"type", "singular"}, {"form", form}, {"gram", matrix_rows(gram)}};
      if (g.cap)
        spec["cap"] = g.cap;
      glue_run(spec);
    });
  }

  // inv
  std::size_t in = 0, ii = 0, im = 0, ik = 0;
  std::int64_t ixi = 1, ij = 0;
  std::string poly_t, space = "generic:2", span, fam_name;
  auto* inv_cmd = app.add_subcommand("inv", "Invariant polynomials");
  inv_cmd->require_subcommand(1);
  auto fmt = [&](CLI::App* sub) {
    sub->add_option("--q", q);
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto finish = [&](const modinv_poly* p) {
    emit_poly(p, format);
    if (!g.json_path.empty()) {
      char* s = nullptr;
      check(modinv_poly_to_json(p, &s), "json");
      write_file(g.json_path, take(s) + "\n");
    }
  };
  {
    auto* sub = inv_cmd->add_subcommand("dickson", "Dickson invariant d_{i,n}");
    sub->add_option("--n", in)->required();
    sub->add_option("--i", ii)->required();
    fmt(sub);
    sub->callback([&] {
      auto f = make_field(g, q);
      modinv_poly* p = nullptr;
      check(modinv_dickson(f.get(), in, ii, &p), "dickson");
      finish(PolyPtr(p, modinv_poly_free).get());
    });
  }
  {
    auto* sub = inv_cmd->add_subcommand("xi", "Symplectic invariant xi_i");
    sub->add_option("--m", im)->required();
    sub->add_option("--i", ixi)->required();
    fmt(sub);
    sub->callback([&] {
      auto f = make_field(g, q);
      modinv_poly* p = nullptr;
      check(modinv_xi(f.get(), im, ixi, &p), "xi");
      finish(PolyPtr(p, modinv_poly_free).get());
    });
  }
  {
    auto* sub = inv_cmd->add_subcommand("nk", "N_k(t) in the symplectic space of rank m");
    sub->add_option("--m", im)->required();
    sub->add_option("--k", ik)->required();
    sub->add_option("--t", poly_t, "Argument polynomial")->required();
    fmt(sub);
    sub->callback([&] {
      auto f = make_field(g, q);
      auto t = parse_poly(f.get(), "symplectic:" + std::to_string(im), poly_t);
      modinv_poly* p = nullptr;
      check(modinv_nk(t.get(), ik, im, &p), "nk");
      finish(PolyPtr(p, modinv_poly_free).get());
    });
  }
  {
    auto* sub = inv_cmd->add_subcommand("orbit", "Product of l + v over the F_q-span of a list");
    sub->add_option("--space", space, "generic:n, symplectic:m or gluing:m,n");
    sub->add_option("--l", poly_t)->required();
    sub->add_option("--span", span, "Comma-separated spanning polynomials");
    fmt(sub);
    sub->callback([&] {
      auto f = make_field(g, q);
      auto l = parse_poly(f.get(), space, poly_t);
      std::vector<PolyPtr> owned;
      std::vector<const modinv_poly*> basis;
      for (const auto& s : split(span, ',')) {
        owned.push_back(parse_poly(f.get(), space, s));
        basis.push_back(owned.back().get());
      }
      modinv_poly* p = nullptr;
      check(modinv_orbit_product(l.get(), basis.data(), basis.size(), &p), "orbit");
      finish(PolyPtr(p, modinv_poly_free).get());
    });
  }
  {
    auto* sub = inv_cmd->add_subcommand("family", "Generator family by name");
    sub->add_option("name", fam_name)->required();
    sub->add_option("--m", im);
    sub->add_option("--n", in);
    sub->add_option("--k", ik);
    sub->add_option("--j", ij);
    sub->add_option("--partition", partition);
    fmt(sub);
    sub->callback([&] {
      auto f = make_field(g, q);
      Json params = {{"m", im}, {"n", in}, {"k", ik}, {"j", ij}};
      if (!partition.empty())
        params["partition"] = Json::parse("[" + partition + "]");
      std::string ps = params.dump();
      char* out = nullptr;
      check(modinv_family_json(f.get(), fam_name.c_str(), ps.c_str(), &out), "family " + fam_name);
      Json fam = Json::parse(take(out));
      if (format == "json") {
        std::cout << fam.dump() << "\n";
      } else {
        std::cout << fam["family"].get<std::string>() << " (" << fam["structure"].get<std::string>() << ")\n";
        for (const auto& mbr : fam["members"])
          std::cout << mbr["label"].get<std::string>() << " [" << mbr["degree"] << "] = "
                    << mbr["poly"].get<std::string>() << "\n";
      }
      write_file(g.json_path, fam.dump() + "\n");
    });
  }

  // verify
  std::string check_name, params_text;
  Json verify_extras = Json::object();
  auto* verify_cmd = app.add_subcommand("verify", "Run one named check; extra --key value pairs become params");
  verify_cmd->add_option("check", check_name)->required();
  verify_cmd->add_option("--params", params_text, "Parameters as a JSON object");
  verify_cmd->callback([&] {
    Json params = params_text.empty() ? Json::object() : Json::parse(params_text);
    for (const auto& [k, v] : verify_extras.items())
      params[k] = v;
    if (!g.field.empty() && !params.contains("q") && !params.contains("p")) {
      auto f = make_field(g, 0);
      params["q"] = modinv_field_order(f.get());
    }
    std::string ps = params.dump();
    char* out = nullptr;
    check(modinv_verify(check_name.c_str(), ps.c_str(), g.cap, g.degree_bound, g.seed, &out), check_name);
    Json rep = Json::parse(take(out));
    std::cout << rep.dump() << "\n";
    std::cout << check_name << ": " << rep["status"].get<std::string>() << "\n";
    write_file(g.json_path, rep.dump() + "\n");
    exit_code = rep["status"] == "fail" ? 1 : 0;
  });

  // run / report
  std::string scenario_path;
  unsigned workers = 0;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file: JSON lines on stdout, summary on stderr");
  run_cmd->add_option("scenario", scenario_path)->required();
  run_cmd->add_option("--workers", workers);
  run_cmd->callback([&] { exit_code = run_scenario_file(g, scenario_path, workers, false); });
  auto* report_cmd = app.add_subcommand("report", "Run a scenario file and print a summary with witnesses");
  report_cmd->add_option("scenario", scenario_path)->required();
  report_cmd->add_option("--workers", workers);
  report_cmd->callback([&] { exit_code = run_scenario_file(g, scenario_path, workers, true); });

  auto* names_cmd = app.add_subcommand("checks", "List check names");
  names_cmd->callback([&] {
    char* out = nullptr;
    check(modinv_check_names(&out), "checks");
    std::cout << take(out);
  });

  try {
    std::vector<std::string> args = split_verify_params(argc, argv, verify_extras);
    std::reverse(args.begin(), args.end());
    args.pop_back();
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON argument: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
