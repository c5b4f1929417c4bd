// Copyright 2026 The condmaj Authors
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

#include "condmaj/cli.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "condmaj/bounds.hpp"
#include "condmaj/closedform.hpp"
#include "condmaj/cmdecide.hpp"
#include "condmaj/error.hpp"
#include "condmaj/io.hpp"
#include "condmaj/measures.hpp"
#include "condmaj/quantum.hpp"

namespace condmaj::cli {

namespace {

using io::json;

json index_list(const std::vector<Eigen::Index>& v) {
  json out = json::array();
  for (auto i : v) out.push_back(i);
  return out;
}

json real_list(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// Records every input file with its digest while loading it.
struct Inputs {
  json list = json::array();

  std::string load(const std::string& path) {
    std::string text = io::read_file(path);
    list.push_back(json{{"path", path}, {"sha256", io::sha256_hex(text)}});
    return text;
  }

  json parse_json(const std::string& path) {
    const std::string text = load(path);
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what(), path);
    }
  }

  JointDistribution joint(const std::string& path) {
    const Matrix m = io::parse_matrix_text(load(path), path);
    try {
      return JointDistribution(m);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), e.location().empty() ? path : path + ":" + e.location());
    }
  }

  CQState cq(const std::string& path) { return io::cq_state_from_json(parse_json(path), path); }

  MeasurementBasis basis(const std::string& path) {
    try {
      return MeasurementBasis(io::vectors_from_json(parse_json(path), path));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), e.location().empty() ? path : path + ":" + e.location());
    }
  }
};

json decision_json(const CMDecision& d) {
  json r{{"verdict", d.verdict},
         {"method", std::string(method_name(d.method))},
         {"canonical_p", io::matrix_to_json(d.canonical_p.matrix())},
         {"canonical_q", io::matrix_to_json(d.canonical_q.matrix())}};
  if (d.witness) {
    json ds = json::array();
    for (const auto& m : d.witness->d) ds.push_back(io::matrix_to_json(m.matrix()));
    r["witness"] = json{{"T", io::matrix_to_json(d.witness->t.matrix())}, {"D", ds}};
  }
  if (d.certificate) {
    r["certificate"] =
        json{{"A", io::matrix_to_json(d.certificate->a_matrix)}, {"gap", d.certificate->gap}};
  }
  return r;
}

json workspace_json(const L2Workspace& ws) {
  json nu = json::array();
  for (const auto& v : ws.nu) nu.push_back(real_list(v));
  return json{{"p", ws.p},
              {"q", real_list(ws.q)},
              {"mu", real_list(ws.mu)},
              {"nu", nu},
              {"iplus", index_list(ws.iplus)},
              {"izero", index_list(ws.izero)},
              {"iminus", index_list(ws.iminus)},
              {"alpha", real_list(ws.alpha)},
              {"beta", real_list(ws.beta)},
              {"w_plus", ws.w_plus},
              {"w_minus", ws.w_minus},
              {"w_zero", ws.w_zero},
              {"w_one", ws.w_one}};
}

json omega_quantum_json(const OmegaBoundQuantum& b) {
  return json{{"omega", b.omega},
              {"flag0_state", io::cvector_to_json(b.flag0_state)},
              {"psi", io::cvector_to_json(b.psi)},
              {"state", io::cq_state_to_json(b.assemble())}};
}

Matrix trim_zero_rows(const Matrix& m) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (m.row(i).cwiseAbs().maxCoeff() > 0.0) keep.push_back(i);
  }
  Matrix out(static_cast<Eigen::Index>(keep.size()), m.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = m.row(keep[k]);
  return out;
}

json error_json(const std::string& code, const std::string& message, const std::string& location) {
  return json{{"error", json{{"code", code}, {"message", message}, {"location", location}}}};
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conditional majorization toolkit", "condmaj"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  bool as_json = true, pretty = false;
  app.add_option("--seed", seed, "Seed for every randomized search")->capture_default_str();
  app.add_option("--tolerance", tolerance, "Witness verification tolerance");
  app.add_flag("--json", as_json, "Emit JSON (the default)");
  app.add_flag("--pretty", pretty, "Indent the JSON output");

  std::string p_path, q_path, sigma_path, b1_path, b2_path, schmidt_path;
  std::string emit_witness, emit_certificate, phi_name = "shannon", indices;
  bool force_lp = false, pad_rows = false, explain = false, compact = false, no_refine = false;
  int grid = 4096, povm_samples = 2048;
  std::optional<std::size_t> j_index, k_index;
  std::optional<double> omega_opt;
  double alpha = 0.0, omega = 0.0;

  const auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  CLI::App* decide = sub("decide", "Decide whether P conditionally majorizes Q");
  decide->add_option("P", p_path)->required();
  decide->add_option("Q", q_path)->required();
  decide->add_flag("--force-lp", force_lp, "Skip the closed-form special cases");
  decide->add_flag("--pad-rows", pad_rows, "Zero-pad the matrix with fewer rows");
  decide->add_option("--emit-witness", emit_witness, "Write T and D to this file");
  decide->add_option("--emit-certificate", emit_certificate, "Write A and gap to this file");

  CLI::App* decide_l2_cmd = sub("decide-l2", "Two-column closed-form decision");
  decide_l2_cmd->add_option("P", p_path)->required();
  decide_l2_cmd->add_option("Q", q_path)->required();
  decide_l2_cmd->add_flag("--explain", explain, "Include all intermediate quantities");

  CLI::App* standardize = sub("standardize", "Canonical form of a joint distribution");
  standardize->add_option("P", p_path)->required();

  CLI::App* measure = sub("measure", "Conditional uncertainty U_phi of a joint distribution");
  measure->add_option("P", p_path)->required();
  measure->add_option("--phi", phi_name, "shannon, guess or renyi:a")->capture_default_str();

  CLI::App* min_unc = sub("min-uncertainty", "Grid minimum over rank-one measurements");
  min_unc->add_option("sigma", sigma_path)->required();
  min_unc->add_option("--phi", phi_name, "shannon, guess or renyi:a")->capture_default_str();
  min_unc->add_option("--grid", grid, "Grid size")->capture_default_str();
  min_unc->add_option("--povm-samples", povm_samples, "Random POVM samples")->capture_default_str();
  min_unc->add_flag("--no-refine", no_refine, "Skip the local refinement");

  CLI::App* qbound = sub("qbound", "Two-branch bound for a classical-quantum state");
  qbound->add_option("sigma", sigma_path)->required();
  qbound->add_option("--j", j_index, "Outcome carrying the certain branch")->required();
  qbound->add_option("--k", k_index, "Partner outcome (general decomposition form)");
  qbound->add_option("--omega", omega_opt, "Weight of the certain branch");

  CLI::App* tri = sub("bound-tripartite", "State-independent bound for two measurements");
  tri->add_option("basis1", b1_path)->required();
  tri->add_option("basis2", b2_path)->required();
  tri->add_option("--alpha", alpha)->required();
  tri->add_flag("--compact", compact, "Drop all-zero rows of the bound matrix");

  CLI::App* bip = sub("bound-bipartite", "State-dependent bound for a pure bipartite state");
  bip->add_option("schmidt", schmidt_path)->required();
  bip->add_option("sbasis", b1_path)->required();
  bip->add_option("tbasis", b2_path)->required();
  bip->add_option("--indices", indices, "x1,z1,x2,z2")->required();
  bip->add_option("--omega", omega)->required();

  CLI::App* selftest = sub("selftest", "Reduced-budget property suite");

  std::vector<std::string> args = argv;
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << io::dump(error_json("UsageError", e.what(), ""), pretty) << "\n";
    err << app.help();
    return 2;
  }
  (void)as_json;

  const auto start = std::chrono::steady_clock::now();
  Inputs inputs;
  json result;
  int code = 0;
  std::string command;
  try {
    const double wit_tol = tolerance.value_or(kEpsWit);
    if (decide->parsed()) {
      command = "decide";
      const JointDistribution p = inputs.joint(p_path);
      const JointDistribution q = inputs.joint(q_path);
      DecideOptions opts;
      opts.force_lp = force_lp;
      opts.pad_rows = pad_rows;
      opts.witness_tol = wit_tol;
      const CMDecision d = conditionally_majorizes(p, q, opts);
      result = decision_json(d);
      if (!emit_witness.empty()) {
        io::write_file(emit_witness, io::dump(d.witness ? result["witness"] : json::object(), true) + "\n");
      }
      if (!emit_certificate.empty()) {
        io::write_file(emit_certificate,
                       io::dump(d.certificate ? result["certificate"] : json::object(), true) + "\n");
      }
      code = d.verdict ? 0 : 1;
    } else if (decide_l2_cmd->parsed()) {
      command = "decide-l2";
      // Inputs are loaded one statement at a time so the report lists them in
      // command-line order; argument evaluation order is unspecified.
      const JointDistribution p = inputs.joint(p_path);
      const JointDistribution q = inputs.joint(q_path);
      const L2Result r = decide_l2(p, q, wit_tol);
      result = json{{"verdict", r.verdict}};
      if (explain) result["workspace"] = workspace_json(r.workspace);
      code = r.verdict ? 0 : 1;
    } else if (standardize->parsed()) {
      command = "standardize";
      const StandardFormResult sf = standard_form(inputs.joint(p_path));
      json perms = json::array(), groups = json::array(), near = json::array();
      for (const auto& v : sf.row_permutations) perms.push_back(index_list(v));
      for (const auto& v : sf.merge_groups) groups.push_back(index_list(v));
      for (const auto& n : sf.near_threshold) {
        near.push_back(json{{"first", n.first}, {"second", n.second}, {"score", n.score}, {"merged", n.merged}});
      }
      result = json{{"canonical", io::matrix_to_json(sf.canonical.matrix())},
                    {"row_permutations", perms},
                    {"merge_groups", groups},
                    {"column_order", index_list(sf.column_order)},
                    {"dropped_columns", index_list(sf.dropped_columns)},
                    {"near_threshold", near}};
    } else if (measure->parsed()) {
      command = "measure";
      const PhiFunction phi = PhiFunction::parse(phi_name);
      result = json{{"phi", phi.name()}, {"value", u_phi(inputs.joint(p_path), phi)}};
    } else if (min_unc->parsed()) {
      command = "min-uncertainty";
      const PhiFunction phi = PhiFunction::parse(phi_name);
      const CQState sigma = inputs.cq(sigma_path);
      const SearchBudget budget{grid, povm_samples, seed, !no_refine};
      const MinUncertainty mu = min_classical_uncertainty_search(sigma, phi, budget);
      json povm = json::array();
      for (const auto& v : mu.best_vectors) povm.push_back(io::cvector_to_json(v));
      result = json{{"phi", phi.name()},
                    {"value", mu.value},
                    {"effective_dim", mu.effective_dim},
                    {"best_povm_vectors", povm},
                    {"budget", json{{"grid", grid}, {"povm_samples", povm_samples}, {"seed", seed},
                                    {"refine", !no_refine}, {"candidates", mu.candidates}}}};
      if (phi.kind() == PhiFunction::Kind::ShannonEntropy) {
        result["holevo_floor"] = quantum_conditional_entropy(sigma);
      }
    } else if (qbound->parsed()) {
      command = "qbound";
      const CQState sigma = inputs.cq(sigma_path);
      const std::size_t j = *j_index;
      if (k_index) {
        const TQBound tq = tq_bound(sigma, j, *k_index);
        const double w = omega_opt.value_or(tq.omega_star);
        OmegaBoundQuantum b;
        b.omega = w;
        b.psi = tq.psi_of_omega(w);
        b.flag0_state = CVector::Zero(b.psi.size());
        b.flag0_state(0) = 1.0;
        result = omega_quantum_json(b);
        result["omega_star"] = tq.omega_star;
        result["r"] = tq.r;
        result["r_y"] = real_list(tq.r_y);
        result["j"] = j;
        result["k"] = *k_index;
      } else {
        if (j >= sigma.size()) throw Error(ErrorCode::IndexError, "index j is out of range");
        const double w = omega_opt.value_or(sigma.probs()[j]);
        const OmegaBoundQuantum b = pure_case_bound(sigma, j, w);
        result = omega_quantum_json(b);
        result["c_j"] = pure_overlap_constant(sigma, j);
        result["j"] = j;
      }
    } else if (tri->parsed()) {
      command = "bound-tripartite";
      const MeasurementBasis b1 = inputs.basis(b1_path);
      const MeasurementBasis b2 = inputs.basis(b2_path);
      const TripartiteBound tb = tripartite_bound(b1, b2, alpha);
      const Matrix om = tb.omega_matrix.as_matrix.matrix();
      result = json{{"c", tb.c},
                    {"eta", tb.eta},
                    {"alpha", tb.alpha},
                    {"beta", tb.beta},
                    {"l", tb.l},
                    {"trivial", tb.trivial},
                    {"omega", real_list(tb.omega_matrix.omega.entries())},
                    {"omega_matrix", io::matrix_to_json(compact ? trim_zero_rows(om) : om)}};
    } else if (bip->parsed()) {
      command = "bound-bipartite";
      std::vector<Eigen::Index> idx;
      std::stringstream ss(indices);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          idx.push_back(std::stol(tok));
        } catch (const std::exception&) {
          throw Error(ErrorCode::UsageError, "indices must be four integers x1,z1,x2,z2");
        }
      }
      if (idx.size() != 4) throw Error(ErrorCode::UsageError, "indices must be four integers x1,z1,x2,z2");
      const ProbVector schmidt(io::real_vector_from_json(inputs.parse_json(schmidt_path), schmidt_path));
      const MeasurementBasis sb = inputs.basis(b1_path);
      const MeasurementBasis tb = inputs.basis(b2_path);
      const BipartiteBound bb = bipartite_bound(schmidt, sb, tb, idx[0], idx[1], idx[2], idx[3], omega);
      json phis = json::array(), varphis = json::array();
      for (const auto& v : bb.phi_states) phis.push_back(io::cvector_to_json(v));
      for (const auto& v : bb.varphi_states) varphis.push_back(io::cvector_to_json(v));
      result = json{{"px", real_list(bb.px.entries())},
                    {"qz", real_list(bb.qz.entries())},
                    {"phi_states", phis},
                    {"varphi_states", varphis},
                    {"indices", index_list(idx)},
                    {"omega", bb.omega},
                    {"psi", io::cvector_to_json(bb.psi)},
                    {"omega_state", io::cq_state_to_json(bb.omega_state())}};
    } else if (selftest->parsed()) {
      command = "selftest";
      std::ostringstream log;
      const int failures = run_selftest(log, seed);
      err << log.str();
      json lines = json::array();
      std::istringstream in(log.str());
      std::string line;
      while (std::getline(in, line)) lines.push_back(line);
      result = json{{"failures", failures}, {"checks", lines}};
      code = failures == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    out << io::dump(error_json(std::string(error_code_name(e.code())), e.what(), e.location()), pretty)
        << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << io::dump(error_json("InternalError", e.what(), ""), pretty) << "\n";
    return 2;
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  const json report{{"command", command},
                    {"inputs", inputs.list},
                    {"result", result},
                    {"seed", seed},
                    {"tool_version", kToolVersion},
                    {"elapsed_ms", elapsed}};
  out << io::dump(report, pretty) << "\n";
  return code;
}

}  // namespace condmaj::cli
