// Command-line surface: classify / betti / symplectic / homotopy / tables /
// fuzz over exact fields Q, R, C, F<p>.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "minalg/classify.hpp"
#include "minalg/io.hpp"
#include "minalg/oracle.hpp"
#include "minalg/symplectic.hpp"

using nlohmann::ordered_json;
using namespace minalg;

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case Err::Parse:
    case Err::BadMode:
    case Err::BadDimension:
    case Err::UnknownLabel:
    case Err::ParameterNotAllowed:
      return 2;
    case Err::NotClosed:
    case Err::NotNilpotent:
      return 3;
    case Err::UnreachableSignature:
    case Err::Internal:
      return 4;
    default:
      return 2;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json omega_json(const ExteriorElement& e) {
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : e.terms()) {
    ordered_json t;
    t["indices"] = mono_indices(m);
    t["coeff"] = c.str();
    terms.push_back(t);
  }
  return terms;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

ordered_json report_header(const std::string& command, const std::string& path,
                           const std::string& text, const MinimalAlgebra& a) {
  ordered_json doc;
  doc["command"] = command;
  doc["input"] = path;
  doc["digest"] = digest_hex(text);
  doc["field"] = a.mode.str();
  doc["dim"] = a.n;
  return doc;
}

std::string sig_str(const std::vector<int>& sig) {
  std::string s = "(";
  for (std::size_t i = 0; i < sig.size(); ++i)
    s += (i ? "," : "") + std::to_string(sig[i]);
  return s + ")";
}

std::string diffs_str(const MinimalAlgebra& a) {
  std::string s;
  for (int i = 0; i < a.n; ++i) {
    if (a.diffs[static_cast<std::size_t>(i)].is_zero()) continue;
    if (!s.empty()) s += ", ";
    s += "dx" + std::to_string(i + 1) + "=" +
         a.diffs[static_cast<std::size_t>(i)].str();
  }
  return s.empty() ? "abelian" : s;
}

int cmd_classify(const std::string& path, const std::string& field, bool json_out) {
  std::string text = read_file(path);
  ParsedInput in = parse_algebra_json(text, field);
  Classification c = classify(in.algebra);
  if (json_out) {
    ordered_json doc = report_header("classify", path, text, in.algebra);
    doc["label"] = c.label.str();
    doc["base"] = c.label.base;
    doc["parameter"] =
        c.label.param.has_value() ? ordered_json(c.label.param->str()) : nullptr;
    doc["arithmetic_label"] = c.arithmetic_label.str();
    doc["signature"] = c.arithmetic_label.signature;
    doc["iso"] = matrix_json(c.iso);
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << c.label.str() << " " << sig_str(c.arithmetic_label.signature)
              << "\n";
    if (c.label != c.arithmetic_label)
      std::cout << "underlying rational class: " << c.arithmetic_label.str()
                << "\n";
    std::cout << "change of basis (rows = canonical generators):\n"
              << c.iso.str() << "\n";
  }
  return 0;
}

int cmd_betti(const std::string& path, const std::string& field, bool json_out) {
  std::string text = read_file(path);
  ParsedInput in = parse_algebra_json(text, field);
  validate(in.algebra);
  BettiVector b = betti(in.algebra);
  long total = 0;
  for (long x : b) total += x;
  if (json_out) {
    ordered_json doc = report_header("betti", path, text, in.algebra);
    doc["betti"] = b;
    doc["total"] = total;
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << "betti = (";
    for (std::size_t i = 0; i < b.size(); ++i) std::cout << (i ? "," : "") << b[i];
    std::cout << "), total " << total << "\n";
  }
  return 0;
}

int cmd_symplectic(const std::string& path, const std::string& field,
                   bool json_out) {
  std::string text = read_file(path);
  ParsedInput in = parse_algebra_json(text, field);
  validate(in.algebra);
  SymplecticVerdict v = decide_symplectic(in.algebra);
  if (json_out) {
    ordered_json doc = report_header("symplectic", path, text, in.algebra);
    doc["symplectic"] = v.symplectic;
    if (v.symplectic) {
      doc["omega"] = omega_json(*v.omega);
    } else {
      doc["certificate"] = v.certificate;
      doc["certified"] = v.certified;
    }
    std::cout << doc.dump() << "\n";
  } else if (v.symplectic) {
    std::cout << "symplectic: omega = " << v.omega->str() << "\n";
  } else {
    std::cout << "not symplectic (" << v.certificate
              << (v.certified ? "" : ", uncertified") << ")\n";
  }
  return 0;
}

int cmd_homotopy(const std::string& path_a, const std::string& path_b,
                 const std::string& field, bool json_out) {
  std::string ta = read_file(path_a), tb = read_file(path_b);
  FieldMode mode = field.empty() ? FieldMode::Q() : FieldMode::parse(field);
  ParsedInput a = parse_algebra_json(ta, mode.str());
  ParsedInput b = parse_algebra_json(tb, mode.str());
  Classification ca = classify(a.algebra), cb = classify(b.algebra);
  bool eq = homotopy_equivalent(a.algebra, b.algebra, mode);
  std::string reason;
  if (ca.label.base != cb.label.base)
    reason = "labels differ: " + ca.label.str() + " vs " + cb.label.str();
  else if (eq)
    reason = "same label and parameter class: " + ca.label.str();
  else
    reason = "same line " + ca.label.base + " but parameter classes differ: " +
             ca.label.param->str() + " vs " + cb.label.param->str();
  if (json_out) {
    ordered_json doc;
    doc["command"] = "homotopy";
    doc["field"] = mode.str();
    doc["inputA"] = path_a;
    doc["inputB"] = path_b;
    doc["digestA"] = digest_hex(ta);
    doc["digestB"] = digest_hex(tb);
    doc["labelA"] = ca.label.str();
    doc["labelB"] = cb.label.str();
    doc["equivalent"] = eq;
    doc["invariant"] = reason;
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << (eq ? "equivalent" : "not equivalent") << " (" << reason << ")\n";
  }
  return 0;
}

int cmd_tables(int dim, const std::string& field, bool json_out) {
  FieldMode mode = field.empty() ? FieldMode::Q() : FieldMode::parse(field);
  std::vector<ClassLabel> labels = enumerate_classes(mode, dim);
  ordered_json rows = ordered_json::array();
  long count = 0;
  bool has_family = false;
  for (const ClassLabel& l : labels) {
    ClassLabel inst = l;
    if (l.family) {
      has_family = true;
      // invariants below are parameter-independent; evaluate at a witness
      const RegistryRow* row = registry_find(l.base);
      inst.family = false;
      inst.param = SquareClass{
          mode, row->family == FamilyKind::Lambda ? Scalar(1) : Scalar(-1)};
    } else {
      ++count;
    }
    MinimalAlgebra a = canonical_model(inst, mode);
    BettiVector b = betti(a);
    long total = 0;
    for (long x : b) total += x;
    std::string sympl = "-";
    if (dim % 2 == 0) {
      if (!mode.is_fp()) {
        SymplecticVerdict v = decide_symplectic(a);
        sympl = v.symplectic ? v.omega->str() : "Not symplectic";
      } else {
        SymplecticVerdict v = decide_symplectic(a);
        sympl = v.symplectic ? v.omega->str() : "none found (uncertified)";
      }
    }
    if (json_out) {
      ordered_json r;
      r["label"] = l.str();
      r["signature"] = l.signature;
      r["diffs"] = diffs_str(a);
      r["betti"] = b;
      r["total"] = total;
      r["symplectic"] = sympl;
      rows.push_back(r);
    } else {
      std::cout << l.str() << "  " << sig_str(l.signature) << "  "
                << diffs_str(a) << "  b=(";
      for (std::size_t i = 0; i < b.size(); ++i)
        std::cout << (i ? "," : "") << b[i];
      std::cout << ") total=" << total << "  " << sympl << "\n";
    }
  }
  std::string count_line =
      has_family ? std::to_string(count) + " rigid classes + 4 parametric families"
                 : std::to_string(count) + " classes";
  if (json_out) {
    ordered_json doc;
    doc["command"] = "tables";
    doc["field"] = mode.str();
    doc["dim"] = dim;
    doc["classes"] = has_family ? ordered_json(nullptr) : ordered_json(count);
    doc["summary"] = count_line;
    doc["rows"] = rows;
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << "dim " << dim << " over " << mode.str() << ": " << count_line
              << "\n";
  }
  return 0;
}

int cmd_fuzz(long trials, std::uint64_t seed, const std::string& field,
             bool json_out) {
  FieldMode mode = field.empty() ? FieldMode::Q() : FieldMode::parse(field);
  std::uint64_t p = mode.modulus();
  std::vector<std::pair<MinimalAlgebra, std::string>> models;
  for (const RegistryRow& row : registry()) {
    if (row.dim < 2) continue;
    std::vector<std::optional<Scalar>> params;
    if (row.family == FamilyKind::None) {
      params.push_back(std::nullopt);
    } else {
      if (row.family == FamilyKind::Lambda) params.emplace_back(Scalar(1, p));
      if (mode.is_fp())
        params.emplace_back(
            Scalar(static_cast<long>(least_nonresidue(mode.p)), p));
      else if (mode.kind == FieldMode::Kind::R)
        params.emplace_back(Scalar(-1));
      else if (mode.kind == FieldMode::Kind::Q) {
        params.emplace_back(Scalar(-1));
        params.emplace_back(Scalar(2));
      }
    }
    for (const auto& par : params) {
      MinimalAlgebra a = instantiate_row(row, mode, par);
      models.emplace_back(a, classify(a).label.str());
    }
  }
  long passes = 0, failures = 0;
  ordered_json fails = ordered_json::array();
  for (long t = 0; t < trials; ++t) {
    const auto& [model, expected] = models[static_cast<std::size_t>(
        t % static_cast<long>(models.size()))];
    auto [scr, m] = scramble(model, seed + static_cast<std::uint64_t>(t) * 0x9e3779b9ULL);
    std::string got;
    try {
      got = classify(scr).label.str();
    } catch (const Error& e) {
      got = std::string("error: ") + e.what();
    }
    if (got == expected) {
      ++passes;
    } else {
      ++failures;
      ordered_json f;
      f["trial"] = t;
      f["expected"] = expected;
      f["got"] = got;
      fails.push_back(f);
    }
  }
  if (json_out) {
    ordered_json doc;
    doc["command"] = "fuzz";
    doc["field"] = mode.str();
    doc["trials"] = trials;
    doc["seed"] = seed;
    doc["passes"] = passes;
    doc["failures"] = failures;
    doc["failed_trials"] = fails;
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << "fuzz: " << passes << "/" << trials << " scramble-classify "
              << "trials stable over " << mode.str() << " (seed " << seed
              << ")\n";
    if (failures) std::cout << failures << " FAILURES\n";
  }
  return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "minalg: exact classification of minimal algebras (nilpotent Lie "
      "algebras) of dimension <= 6, their cohomology and symplectic forms"};
  app.require_subcommand(1);

  std::string field;
  bool json_out = false;
  app.add_option("--field", field, "field mode: Q, R, C or F<p> (odd prime p)");
  app.add_flag("--json", json_out, "machine-readable output");

  std::string file_a, file_b;
  auto* c_classify = app.add_subcommand("classify", "canonical form of an algebra");
  c_classify->add_option("file", file_a)->required();
  auto* c_betti = app.add_subcommand("betti", "Betti numbers b_0..b_n");
  c_betti->add_option("file", file_a)->required();
  auto* c_sympl =
      app.add_subcommand("symplectic", "decide existence of a symplectic form");
  c_sympl->add_option("file", file_a)->required();
  auto* c_homotopy = app.add_subcommand(
      "homotopy", "k-homotopy comparison of two rational algebras");
  c_homotopy->add_option("fileA", file_a)->required();
  c_homotopy->add_option("fileB", file_b)->required();

  int dim = 6;
  auto* c_tables =
      app.add_subcommand("tables", "regenerate the classification tables");
  c_tables->add_option("--dim", dim, "dimension (2..6)")->default_val(6);

  long trials = 100;
  std::uint64_t seed = 1;
  auto* c_fuzz =
      app.add_subcommand("fuzz", "randomized scramble-classify invariance");
  c_fuzz->add_option("--trials", trials)->default_val(100);
  c_fuzz->add_option("--seed", seed)->default_val(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_classify->parsed()) return cmd_classify(file_a, field, json_out);
    if (c_betti->parsed()) return cmd_betti(file_a, field, json_out);
    if (c_sympl->parsed()) return cmd_symplectic(file_a, field, json_out);
    if (c_homotopy->parsed()) return cmd_homotopy(file_a, file_b, field, json_out);
    if (c_tables->parsed()) return cmd_tables(dim, field, json_out);
    if (c_fuzz->parsed()) return cmd_fuzz(trials, seed, field, json_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
