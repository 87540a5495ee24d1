#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dkit/examples.hpp"

using namespace dkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

size_t default_budget() {
  if (const char* env = std::getenv("DKIT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
  }
  return size_t{1} << 20;
}

std::string compact_witt(const WittVector& w) {
  std::string out = "w(";
  for (int i = 0; i < w.n(); ++i) {
    if (i) out += ";";
    out += w.component(static_cast<size_t>(i)).to_string();
  }
  return out + ")";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Variable substitution "name=value,name2=value2": base-changes the
// presentation to the ring with those variables removed.
Presentation apply_at(const Presentation& pres, const std::string& at) {
  const Ring& R = pres->ring();
  std::map<std::string, std::string> assign;
  std::istringstream in(at);
  std::string part;
  while (std::getline(in, part, ',')) {
    size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw parse_error("substitution must look like name=value: " + part);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string name = trim(part.substr(0, eq));
    std::string value = trim(part.substr(eq + 1));
    // spelled-out aliases for the one-letter ASCII variables
    if (R->var_index(name) < 0) {
      if (name == "lambda") name = "l";
      else if (name == "epsilon") name = "e";
    }
    if (R->var_index(name) < 0)
      throw parse_error("unknown variable in substitution: " + name);
    assign[name] = value;
  }

  std::vector<Variable> keep;
  bool keep_modulus_var = false;
  for (size_t i = 0; i < R->vars().size(); ++i) {
    const auto& v = R->vars()[i];
    if (assign.count(v.name)) {
      if (R->modulus() && i == 0)
        throw parse_error("cannot substitute the modulus variable " + v.name);
      continue;
    }
    if (R->modulus() && i == 0)
      keep_modulus_var = true;
    else
      keep.push_back(v);
  }
  Ring target;
  if (R->modulus() && keep_modulus_var) {
    target = RingSpec::univariate_quotient(R->p(), R->vars()[0].name,
                                           *R->modulus());
    if (!keep.empty()) target = RingSpec::extend(target, keep);
  } else if (keep.empty()) {
    target = RingSpec::prime_field(R->p());
  } else {
    target = RingSpec::quotient_ring(R->p(), keep);
  }
  std::vector<RingElement> images;
  for (const auto& v : R->vars()) {
    auto it = assign.find(v.name);
    images.push_back(it != assign.end()
                         ? RingElement::parse(target, it->second)
                         : target->generator(v.name));
  }
  return base_change(pres, RingHom(R, target, images));
}

struct CommonOpts {
  std::string ring = "fp 2";
  int n = 1;
  int r = 1;
  int p = 2;
  std::string file;
  std::string at;
  size_t budget = default_budget();
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_ring = true) {
  if (with_ring) cmd->add_option("--ring", o.ring, "base ring spec");
  cmd->add_option("--p", o.p, "prime");
  cmd->add_option("--n", o.n, "level / Witt length");
  cmd->add_option("--r", o.r, "rank");
  cmd->add_option("--file", o.file, "presentation file");
  cmd->add_option("--at", o.at, "variable substitution, e.g. \"l=1\"");
  cmd->add_option("--budget", o.budget, "cap for exhaustive scans");
}

Presentation load_presentation(const CommonOpts& o) {
  if (o.file.empty()) throw parse_error("--file is required");
  auto pres = CosmoothPresentation::parse(read_file(o.file));
  if (!o.at.empty()) pres = apply_at(pres, o.at);
  return pres;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dkit: exact arithmetic for truncated Witt vectors, the truncated "
      "Cartier ring, and structure-equation modules"};
  app.require_subcommand(1);
  app.set_config("--config");

  int exit_code = kExitOk;

  // ---- witt -------------------------------------------------------------
  auto* witt = app.add_subcommand("witt", "Witt vector arithmetic");
  witt->require_subcommand(1);
  static CommonOpts wo;
  static std::string warg1, warg2;
  for (const char* verb : {"add", "mul", "neg", "frob", "versch", "teich"}) {
    auto* cmd = witt->add_subcommand(verb);
    add_common(cmd, wo);
    cmd->add_option("first", warg1, "first operand");
    cmd->add_option("second", warg2, "second operand");
    std::string v = verb;
    cmd->callback([&, v] {
      auto ring = RingSpec::parse(wo.ring);
      bool binary = v == "add" || v == "mul";
      if (warg1.empty() || (binary && warg2.empty()) ||
          (!binary && !warg2.empty()))
        throw parse_error(v + " needs " + (binary ? "two operands" : "one operand"));
      if (v == "teich") {
        std::cout << compact_witt(WittVector::teichmuller(
                         RingElement::parse(ring, warg1), wo.n))
                  << "\n";
        return;
      }
      auto a = WittVector::parse(ring, wo.n, warg1);
      if (binary) {
        auto b = WittVector::parse(ring, wo.n, warg2);
        std::cout << compact_witt(v == "add" ? a + b : a * b) << "\n";
      } else {
        auto out = v == "neg" ? -a : v == "frob" ? a.frobenius() : a.verschiebung();
        std::cout << compact_witt(out) << "\n";
      }
    });
  }

  // ---- cartier ----------------------------------------------------------
  auto* cart = app.add_subcommand("cartier", "Cartier ring in normal form");
  cart->require_subcommand(1);
  static CommonOpts co;
  static std::string carg1, carg2;
  for (const char* verb : {"add", "mul", "neg", "show", "act"}) {
    auto* cmd = cart->add_subcommand(verb);
    add_common(cmd, co);
    cmd->add_option("first", carg1, "first operand");
    cmd->add_option("second", carg2, "second operand");
    std::string v = verb;
    cmd->callback([&, v] {
      auto ring = RingSpec::parse(co.ring);
      bool binary = v == "add" || v == "mul" || v == "act";
      if (carg1.empty() || (binary && carg2.empty()) ||
          (!binary && !carg2.empty()))
        throw parse_error(v + " needs " + (binary ? "two operands" : "one operand"));
      auto a = CartierElement::parse(ring, co.n, carg1);
      if (v == "act") {
        std::cout << compact_witt(a.act(WittVector::parse(ring, co.n, carg2)))
                  << "\n";
      } else if (binary) {
        auto b = CartierElement::parse(ring, co.n, carg2);
        std::cout << (v == "add" ? a + b : a * b).to_string() << "\n";
      } else {
        std::cout << (v == "neg" ? -a : a).to_string() << "\n";
      }
    });
  }

  // ---- module -----------------------------------------------------------
  auto* mod = app.add_subcommand("module", "structure-equation modules");
  mod->require_subcommand(1);
  static CommonOpts mo;
  {
    auto* cmd = mod->add_subcommand("verify", "check the module axioms");
    add_common(cmd, mo, false);
    cmd->callback([&] {
      auto rep = verify_cosmooth(load_presentation(mo), mo.budget);
      std::cout << rep.summary();
      if (!rep.pass) exit_code = kExitCheckFailed;
    });
  }
  {
    auto* cmd = mod->add_subcommand("show", "print the normalized presentation");
    add_common(cmd, mo, false);
    cmd->callback([&] { std::cout << load_presentation(mo)->to_string(); });
  }
  {
    auto* cmd = mod->add_subcommand("truncate", "drop to level --n");
    add_common(cmd, mo, false);
    cmd->callback([&] {
      std::cout << truncate(load_presentation(mo), mo.n)->to_string();
    });
  }
  {
    auto* cmd = mod->add_subcommand("lift", "lift one level (zero top layer)");
    add_common(cmd, mo, false);
    cmd->callback(
        [&] { std::cout << lift_level(load_presentation(mo))->to_string(); });
  }

  // ---- points -----------------------------------------------------------
  auto* pts = app.add_subcommand("points", "solve the structure equations");
  pts->require_subcommand(1);
  static CommonOpts po;
  {
    auto* cmd = pts->add_subcommand("scan", "enumerate points over an algebra");
    add_common(cmd, po);
    po.ring.clear();
    cmd->callback([&] {
      auto pres = load_presentation(po);
      RingHom h = po.ring.empty()
                      ? RingHom::identity(pres->ring())
                      : RingHom::inclusion(pres->ring(), RingSpec::parse(po.ring));
      auto ps = points(pres, h, po.budget);
      std::cout << ps.to_string();
      auto g = group_structure(ps);
      std::cout << "group: " << g.to_string() << "\n";
      if (!g.axioms_ok) exit_code = kExitCheckFailed;
    });
  }

  // ---- census -----------------------------------------------------------
  auto* cen = app.add_subcommand("census", "isomorphism classes over F_q");
  cen->require_subcommand(1);
  static CommonOpts xo;
  {
    auto* cmd = cen->add_subcommand("run", "orbit census at (n, r)");
    add_common(cmd, xo);
    cmd->callback([&] {
      auto rep = census(RingSpec::parse(xo.ring), xo.n, xo.r, xo.budget);
      std::cout << rep.to_csv();
      auto m = rep.total_mass();
      std::cout << "mass " << m.numerator() << "/" << m.denominator() << "\n";
      if (!rep.orbit_stabilizer_ok) exit_code = kExitCheckFailed;
    });
  }
  {
    auto* cmd = cen->add_subcommand("lifts", "truncation surjectivity witnesses");
    add_common(cmd, xo);
    cmd->callback([&] {
      auto table =
          truncation_surjectivity(RingSpec::parse(xo.ring), xo.n, xo.r, xo.budget);
      std::cout << "classes " << table.witnesses.size() << " coverage "
                << table.coverage << "\n";
      if (table.coverage != 1.0) exit_code = kExitCheckFailed;
    });
  }

  // ---- examples ---------------------------------------------------------
  auto* ex = app.add_subcommand("examples", "scripted worked examples");
  ex->require_subcommand(1);
  static CommonOpts eo;
  static std::string which = "all";
  {
    auto* cmd = ex->add_subcommand("run", "run a worked example");
    add_common(cmd, eo, false);
    cmd->add_option("name", which, "all | family | zpn | hochschild");
    cmd->callback([&] {
      std::vector<ExampleReport> reports;
      if (which == "all")
        reports = run_examples(eo.p, eo.n);
      else if (which == "family")
        reports = {run_lambda_family(eo.p, eo.n)};
      else if (which == "zpn")
        reports = {run_zpn(eo.p, eo.n)};
      else if (which == "hochschild")
        reports = {run_hochschild(eo.p, eo.n)};
      else
        throw parse_error("unknown example: " + which);
      for (const auto& r : reports) {
        std::cout << r.to_string();
        if (!r.pass()) exit_code = kExitCheckFailed;
      }
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}
