// Copyright 2026 The cwe developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cwe/codes.hpp"
#include "cwe/conjinv.hpp"
#include "cwe/cwgroup.hpp"
#include "cwe/cyclo.hpp"
#include "cwe/schurweyl.hpp"
#include "cwe/typespec.hpp"
#include "cwe/util.hpp"

namespace {

using namespace cwe;

std::shared_ptr<const TypeRep> load_type(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec))
    return std::make_shared<const TypeRep>(read_type_path(spec));
  return builtin(spec);
}

std::vector<int64_t> parse_ints(const std::string& s) {
  std::vector<int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    require(!item.empty(), "empty entry in integer list");
    out.push_back(std::stoll(item));
  }
  require(!out.empty(), "empty integer list");
  return out;
}

std::vector<int64_t> balanced_twist(int len) {
  require(len >= 1, "length must be positive");
  std::vector<int64_t> a;
  for (int i = 0; i < len; ++i) a.push_back(1);
  for (int i = 0; i < len; ++i) a.push_back(-1);
  return a;
}

TwistedSum twist_from(const std::shared_ptr<const TypeRep>& t,
                      const std::string& a_str, int len) {
  require(a_str.empty() != (len == 0),
          "give exactly one of --a and --len");
  if (!a_str.empty()) return make_twisted_sum(t, parse_ints(a_str));
  return make_twisted_sum(t, balanced_twist(len));
}

std::string rows_str(const Code& c) {
  std::ostringstream os;
  for (size_t r = 0; r < c.rows.size(); ++r) {
    if (r) os << " ";
    for (uint8_t x : c.rows[r]) os << static_cast<int>(x);
  }
  if (c.rows.empty()) os << "-";
  return os.str();
}

Code code_from_string(const std::shared_ptr<const TypeRep>& t, int n,
                      const std::string& rows) {
  std::vector<Word> parsed;
  std::stringstream ss(rows);
  std::string item;
  while (std::getline(ss, item, ',')) {
    require(static_cast<int>(item.size()) == n,
            "row length does not match the twist length");
    Word w;
    for (char ch : item) {
      require(ch >= '0' && ch <= '9', "row digits must be 0-9");
      w.push_back(static_cast<uint8_t>(ch - '0'));
    }
    parsed.push_back(w);
  }
  return make_code(t, n, parsed);
}

struct Out {
  std::ostringstream text;
  std::string path;
  int flush() {
    if (path.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream f(path);
      require(f.good(), "cannot open output file " + path);
      f << text.str();
    }
    return 0;
  }
};

void print_classes(Out& out, const std::vector<CodeClass>& classes) {
  out.text << "classes " << classes.size() << "\n";
  for (size_t i = 0; i < classes.size(); ++i) {
    const CodeClass& c = classes[i];
    out.text << "  class " << i + 1 << ": dim " << c.rep.dim() << " aut "
             << c.aut_order << (c.decomposable ? " decomposable" : "")
             << " rows " << rows_str(c.rep) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic for self-dual code enumerators, their\n"
               "invariant rings, and tensor commutants"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  int workers = 1;
  app.add_option("--out", out_path, "write the report to this file");
  app.add_option("--workers", workers,
                 "worker bound; results are identical for any value");

  std::string type_str, a_str, code_str, code_file, degree_str, cap_str,
      method = "neighbors", demo_what;
  int len = 0, genus = 1, power = 1;
  uint64_t cap = 0;

  auto* validate_cmd =
      app.add_subcommand("validate-type", "check the axioms of a type");
  validate_cmd->add_option("--type", type_str, "builtin name or descriptor file")
      ->required();

  auto* enum_cmd = app.add_subcommand(
      "enumerate", "exhaustively list the codes of a twist");
  enum_cmd->add_option("--type", type_str)->required();
  enum_cmd->add_option("--a", a_str, "twist entries, comma separated");
  enum_cmd->add_option("--len", len, "balanced twist with this many +1 pairs");
  enum_cmd->add_option("--cap", cap, "element cap");

  auto* classify_cmd = app.add_subcommand(
      "classify", "classification into equivalence classes");
  classify_cmd->add_option("--type", type_str)->required();
  classify_cmd->add_option("--a", a_str);
  classify_cmd->add_option("--len", len);
  classify_cmd->add_option("--method", method,
                           "neighbors | bruteforce | doublecosets");
  classify_cmd->add_option("--cap", cap, "element cap");

  auto* mass_cmd = app.add_subcommand(
      "mass-check", "mass formula against the full enumeration");
  mass_cmd->add_option("--type", type_str)->required();
  mass_cmd->add_option("--a", a_str);
  mass_cmd->add_option("--len", len);

  auto* we_cmd = app.add_subcommand(
      "we", "collapsed weight enumerator of one code");
  we_cmd->add_option("--type", type_str);
  we_cmd->add_option("--a", a_str);
  we_cmd->add_option("--len", len);
  we_cmd->add_option("--code", code_str,
                     "generator rows as digit strings, comma separated");
  we_cmd->add_option("--code-file", code_file, "code file path");
  we_cmd->add_option("--genus", genus, "genus, default 1");

  auto* dim_cmd = app.add_subcommand(
      "invariant-dim", "dimension of the homogeneous invariant cell");
  dim_cmd->add_option("--type", type_str)->required();
  dim_cmd->add_option("--genus", genus);
  dim_cmd->add_option("--degree", degree_str, "degrees per unit component")
      ->required();

  auto* molien_cmd = app.add_subcommand(
      "molien", "averaged inverse determinant series over the closure");
  molien_cmd->add_option("--type", type_str)->required();
  molien_cmd->add_option("--genus", genus);
  molien_cmd
      ->add_option("--cap", cap_str,
                   "degree caps: one per component, or first,last shorthand")
      ->required();

  auto* verify_cmd = app.add_subcommand(
      "verify-main", "rank of class enumerators against the invariant cell");
  verify_cmd->add_option("--type", type_str)->required();
  verify_cmd->add_option("--a", a_str);
  verify_cmd->add_option("--len", len);
  verify_cmd->add_option("--genus", genus);

  auto* sw_cmd = app.add_subcommand(
      "schur-weyl", "tensor commutant against code endomorphisms");
  sw_cmd->add_option("--type", type_str)->required();
  sw_cmd->add_option("--genus", genus);
  sw_cmd->add_option("--power", power, "tensor power N");

  auto* demo_cmd = app.add_subcommand(
      "demo", "worked demonstrations; currently: sign-condition");
  demo_cmd->add_option("what", demo_what, "demonstration name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Out out;
  out.path = out_path;
  try {
    if (app.got_subcommand(validate_cmd)) {
      auto t = load_type(type_str);
      ValidationReport rep = validate(*t);
      out.text << rep.to_string();
      int rc = out.flush();
      return rep.ok() ? rc : 2;
    }

    if (app.got_subcommand(enum_cmd)) {
      auto t = load_type(type_str);
      TwistedSum ts = twist_from(t, a_str, len);
      std::vector<Code> codes =
          cap ? enumerate_codes(ts, cap) : enumerate_codes(ts);
      out.text << "codes " << codes.size() << "\n";
      if (codes.empty()) {
        out.text << "classes 0\n";
      } else {
        std::vector<CodeClass> classes = classify_codes(ts);
        print_classes(out, classes);
      }
      return out.flush();
    }

    if (app.got_subcommand(classify_cmd)) {
      auto t = load_type(type_str);
      TwistedSum ts = twist_from(t, a_str, len);
      if (method == "neighbors") {
        std::vector<CodeClass> classes =
            cap ? classify_codes(ts, {}, cap) : classify_codes(ts);
        print_classes(out, classes);
      } else if (method == "bruteforce") {
        std::vector<Code> codes =
            cap ? enumerate_codes(ts, cap) : enumerate_codes(ts);
        std::vector<Code> reps;
        for (const Code& c : codes) {
          bool seen = false;
          for (const Code& r : reps)
            if (equivalent(c, r, ts)) {
              seen = true;
              break;
            }
          if (!seen) reps.push_back(c);
        }
        out.text << "codes " << codes.size() << "\n";
        out.text << "classes " << reps.size() << "\n";
        for (size_t i = 0; i < reps.size(); ++i)
          out.text << "  class " << i + 1 << ": rows " << rows_str(reps[i])
                   << "\n";
      } else if (method == "doublecosets") {
        require(len > 0, "--method doublecosets needs --len");
        auto mats = orthogonal_matrices(t->q, len, false);
        out.text << "orthogonal matrices " << mats.size() << "\n";
        out.text << "double cosets " << double_coset_count(mats, len) << "\n";
      } else {
        require(false, "unknown method " + method);
      }
      return out.flush();
    }

    if (app.got_subcommand(mass_cmd)) {
      auto t = load_type(type_str);
      TwistedSum ts = twist_from(t, a_str, len);
      std::vector<CodeClass> classes = classify_codes(ts);
      MassCheck mc = mass_check(classes, ts);
      std::vector<Code> codes = enumerate_codes(ts);
      out.text << "classes " << classes.size() << "\n";
      out.text << "sum 1/aut " << mc.class_sum.get_str() << "\n";
      out.text << "group order " << mc.group_order << "\n";
      out.text << "predicted total " << mc.predicted_total.get_str() << "\n";
      out.text << "enumerated total " << codes.size() << "\n";
      bool okmass = mc.predicted_total == Rat(static_cast<long>(codes.size()));
      out.text << "mass formula " << (okmass ? "EXACT" : "MISMATCH") << "\n";
      int rc = out.flush();
      internal_check(okmass, "mass formula mismatch");
      return rc;
    }

    if (app.got_subcommand(we_cmd)) {
      std::shared_ptr<const TypeRep> t;
      TwistedSum ts = [&] {
        if (!code_file.empty()) {
          std::ifstream f(code_file);
          require(f.good(), "cannot open code file " + code_file);
          CodeFile cf = read_code_file(f);
          t = load_type(cf.type_name);
          return make_twisted_sum(t, cf.a);
        }
        require(!type_str.empty(), "--type is required without --code-file");
        t = load_type(type_str);
        return twist_from(t, a_str, len);
      }();
      Code c = [&] {
        if (!code_file.empty()) {
          std::ifstream f(code_file);
          CodeFile cf = read_code_file(f);
          return make_code(t, cf.n, cf.rows);
        }
        require(!code_str.empty(), "give --code or --code-file");
        return code_from_string(t, ts.n_len(), code_str);
      }();
      std::string why;
      bool okcode = is_type_code(c, ts, &why);
      require(okcode, "not a code of this type: " + why);
      GaloisSetup gs = galois_setup(*t);
      ConjPoly p = ccwe_poly(c, ts, gs, genus);
      out.text << "genus " << genus << " terms " << p.terms.size() << "\n";
      out.text << p.str();
      return out.flush();
    }

    if (app.got_subcommand(dim_cmd)) {
      auto t = load_type(type_str);
      GaloisSetup gs = galois_setup(*t);
      CWGroup g = group_for(t, gs, genus);
      std::vector<int64_t> deg64 = parse_ints(degree_str);
      std::vector<int> degree(deg64.begin(), deg64.end());
      DimResult d = invariant_dim_engine(g, degree);
      out.text << "monomials " << d.monomials << "\n";
      out.text << "survivors " << d.survivors << " orbits " << d.orbits
               << "\n";
      out.text << "dimension " << d.dim << " (" << d.method
               << (d.exact ? ", exact" : ", bound") << ")\n";
      return out.flush();
    }

    if (app.got_subcommand(molien_cmd)) {
      auto t = load_type(type_str);
      GaloisSetup gs = galois_setup(*t);
      CWGroup g = group_for(t, gs, genus);
      const int comps = static_cast<int>(gs.units.size());
      std::vector<int64_t> raw = parse_ints(cap_str);
      std::vector<int> caps(comps, 0);
      if (static_cast<int>(raw.size()) == comps) {
        for (int j = 0; j < comps; ++j) caps[j] = static_cast<int>(raw[j]);
      } else if (raw.size() == 2) {
        caps.front() = static_cast<int>(raw[0]);
        caps.back() = static_cast<int>(raw[1]);
      } else {
        require(false, "--cap needs 2 entries or one per component");
      }
      MolienResult mr = molien(g, caps);
      out.text << "group order " << mr.group_order << "\n";
      for (size_t i = 0; i < mr.degrees.size(); ++i) {
        for (size_t j = 0; j < mr.degrees[i].size(); ++j)
          out.text << (j ? "," : "") << mr.degrees[i][j];
        out.text << ": " << mr.coefficients[i].get_str() << "\n";
      }
      return out.flush();
    }

    if (app.got_subcommand(verify_cmd)) {
      auto t = load_type(type_str);
      TwistedSum ts = twist_from(t, a_str, len);
      VerifyMainReport rep = verify_main(ts, genus);
      out.text << rep.to_string();
      int rc = out.flush();
      internal_check(rep.verdict != "FAIL", "verification failed");
      return rc;
    }

    if (app.got_subcommand(sw_cmd)) {
      auto t = load_type(type_str);
      SchurWeylReport rep = verify_schurweyl(t, genus, power);
      out.text << rep.to_string();
      int rc = out.flush();
      internal_check(rep.ok(), "tensor commutant verification failed");
      return rc;
    }

    if (app.got_subcommand(demo_cmd)) {
      require(demo_what == "sign-condition",
              "unknown demonstration " + demo_what);
      DemoReport rep = counterexample_demo();
      out.text << rep.to_string();
      int rc = out.flush();
      internal_check(rep.ok(), "demonstration checks failed");
      return rc;
    }
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const CapError& e) {
    std::cerr << "cap exceeded (results incomplete): " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal consistency: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
