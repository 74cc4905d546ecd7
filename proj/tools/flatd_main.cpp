// flatd: exact calculus for flat manifolds of diagonal type.
//
// Exit codes: 0 the decided predicate holds, 1 it fails, 2 usage/parse/
// resource errors. All arithmetic is exact; --json wraps every answer in a
// certificate envelope with named checks.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "flatd/diffuse.hpp"
#include "flatd/errors.hpp"
#include "flatd/io.hpp"
#include "flatd/klein.hpp"
#include "flatd/matrix.hpp"
#include "flatd/reduce.hpp"
#include "flatd/vasquez.hpp"

using nlohmann::ordered_json;
using namespace flatd;

namespace {

struct Options {
    bool json = false;
    int jobs = 1;
};

const char* yesno(bool b) { return b ? "yes" : "no"; }

std::string holonomy_name(int k) { return "C2^" + std::to_string(k); }

std::string entries_text(row_t row, int n) {
    std::string s;
    for (int j = 0; j < n; ++j) {
        if (j) s += ' ';
        s += char('0' + get_entry(row, j));
    }
    return s;
}

std::string labels_text(const std::vector<unsigned>& vs) {
    if (vs.empty()) return "(none)";
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ", ";
        s += row_label(vs[i]);
    }
    return s;
}

std::string cols1_text(const std::vector<int>& cols) {
    if (cols.empty()) return "(none)";
    std::string s;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(cols[i] + 1);
    }
    return s;
}

ordered_json cols1_json(const std::vector<int>& cols) {
    ordered_json a = ordered_json::array();
    for (int c : cols) a.push_back(c + 1);
    return a;
}

ordered_json labels_json(const std::vector<unsigned>& vs) {
    ordered_json a = ordered_json::array();
    for (unsigned v : vs) a.push_back(row_label(v));
    return a;
}

ordered_json checks_json(const std::vector<std::pair<std::string, bool>>& checks) {
    ordered_json a = ordered_json::array();
    for (const auto& [name, pass] : checks)
        a.push_back(ordered_json{{"name", name}, {"pass", pass}});
    return a;
}

void emit_json(const std::string& type, const GenMatrix& input, ordered_json payload,
               const std::vector<std::pair<std::string, bool>>& checks) {
    std::cout << make_certificate(type, matrix_to_file_text(input), std::move(payload),
                                  checks_json(checks))
                     .dump(2)
              << "\n";
}

ordered_json translation_json(const AffineIsometry& a) {
    // Pure lattice translations only: doubled coordinates are all even.
    ordered_json v = ordered_json::array();
    for (int j = 0; j < a.n; ++j) v.push_back(a.t2[j] / 2);
    return v;
}

ordered_json witness_json(const DeltaPWitness& w) {
    return ordered_json{{"alpha", describe(w.alpha)},
                        {"beta", describe(w.beta)},
                        {"alpha_squared", translation_json(compose(w.alpha, w.alpha))},
                        {"beta_squared", translation_json(compose(w.beta, w.beta))},
                        {"alphabeta_squared",
                         translation_json(compose(compose(w.alpha, w.beta),
                                                  compose(w.alpha, w.beta)))},
                        {"relation1", w.relation1},
                        {"relation2", w.relation2},
                        {"independence_rank", w.independence_rank},
                        {"ok", w.ok()}};
}

void print_witness_text(const DeltaPWitness& w) {
    std::cout << "alpha = " << describe(w.alpha) << "\n";
    std::cout << "beta  = " << describe(w.beta) << "\n";
    std::cout << "relation x^-1 y^2 x y^2 = id: " << yesno(w.relation1) << "\n";
    std::cout << "relation y^-1 x^2 y x^2 = id: " << yesno(w.relation2) << "\n";
    std::cout << "rank of {alpha^2, beta^2, (alpha*beta)^2}: " << w.independence_rank
              << "\n";
    std::cout << "Delta_P witness: " << (w.ok() ? "verified" : "FAILED") << "\n";
}

ordered_json reduction_step_json(const ReductionStep& st, const GenMatrix& after) {
    return ordered_json{{"deleted_column", st.deleted_column + 1},
                        {"renormalized_columns", cols1_json(st.renormalized_columns)},
                        {"holonomy_kernel", labels_json(st.holonomy_kernel)},
                        {"after", matrix_json(after)}};
}

ordered_json trace_json(const ReductionTrace& tr) {
    ordered_json steps = ordered_json::array();
    for (std::size_t i = 0; i < tr.steps.size(); ++i)
        steps.push_back(reduction_step_json(tr.steps[i], tr.after[i]));
    ordered_json j{{"input", matrix_json(tr.input)},
                   {"steps", std::move(steps)},
                   {"final", matrix_json(tr.final)},
                   {"blocked", tr.blocked}};
    if (tr.blocked) j["blocked_columns"] = cols1_json(tr.blocked_columns);
    return j;
}

void print_trace_text(const ReductionTrace& tr) {
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
        const ReductionStep& st = tr.steps[i];
        std::cout << "step " << i + 1 << ": delete column " << st.deleted_column + 1;
        if (!st.holonomy_kernel.empty())
            std::cout << ", holonomy kernel " << labels_text(st.holonomy_kernel)
                      << ", renormalized columns " << cols1_text(st.renormalized_columns);
        std::cout << "\n";
        const GenMatrix& a = tr.after[i];
        std::cout << "  -> " << a.k << " x " << a.n << "\n";
        for (int r = 0; r < a.k; ++r)
            std::cout << "     " << entries_text(a.row[r], a.n) << "\n";
    }
    if (tr.blocked)
        std::cout << "blocked: deletable columns " << cols1_text(tr.blocked_columns)
                  << " all lead to non-diagonal quotients\n";
}

int cmd_validate(const GenMatrix& a, const Options& opt) {
    const ValidityReport rep = validate(a);
    const Closure c = closure(a);
    const bool law = column_counts_lawful(c);
    if (opt.json) {
        ordered_json payload{{"matrix", matrix_json(a)},
                             {"torsion_free", rep.torsion_free},
                             {"faithful", rep.faithful},
                             {"valid", rep.valid},
                             {"holonomy", holonomy_name(a.k)},
                             {"dim", a.n},
                             {"betti1", rep.valid ? betti1(a) : -1},
                             {"offending_rows", labels_json(rep.offending_rows)}};
        emit_json("validate", a, std::move(payload),
                  {{"torsion-free", rep.torsion_free},
                   {"faithful", rep.faithful},
                   {"valid", rep.valid},
                   {"column one-count law", law}});
    } else {
        std::cout << "torsion-free: " << yesno(rep.torsion_free) << ", faithful: "
                  << yesno(rep.faithful) << ", holonomy: " << holonomy_name(a.k)
                  << ", dim " << a.n << "\n";
        std::cout << "valid: " << yesno(rep.valid) << "\n";
        if (!rep.offending_rows.empty()) {
            std::cout << (rep.torsion_free ? "sign-free rows: " : "rows without a 1: ")
                      << labels_text(rep.offending_rows) << "\n";
        }
        if (rep.valid) std::cout << "betti1: " << betti1(a) << "\n";
    }
    return rep.valid ? 0 : 1;
}

int cmd_closure(const GenMatrix& a, const Options& opt) {
    const Closure c = closure(a);
    const std::vector<unsigned> order = display_order(a.k);
    const std::vector<int> counts = column_one_counts(c);
    const bool law = column_counts_lawful(c);
    if (opt.json) {
        ordered_json rows = ordered_json::array();
        for (unsigned v : order) {
            ordered_json entries = ordered_json::array();
            for (int j = 0; j < a.n; ++j) entries.push_back(int(get_entry(c.at(v), j)));
            rows.push_back(ordered_json{{"label", row_label(v)},
                                        {"entries", std::move(entries)},
                                        {"phi", phi_row(c.at(v), a.n)}});
        }
        ordered_json payload{{"matrix", matrix_json(a)},
                             {"rows", std::move(rows)},
                             {"column_one_counts", counts}};
        emit_json("closure", a, std::move(payload), {{"column one-count law", law}});
    } else {
        std::cout << "closure of the " << a.k << " x " << a.n << " matrix ("
                  << order.size() << " rows):\n";
        for (unsigned v : order) {
            std::string label = row_label(v);
            label.resize(3 * std::size_t(a.k), ' ');
            std::cout << label << " : " << entries_text(c.at(v), a.n)
                      << " | phi: " << phi_row(c.at(v), a.n) << "\n";
        }
        std::cout << "column one-counts:";
        for (int x : counts) std::cout << ' ' << x;
        std::cout << " (law: " << (law ? "ok" : "VIOLATED") << ")\n";
    }
    return law ? 0 : 1;
}

int cmd_reduce(const GenMatrix& a, const Options& opt) {
    const ReductionTrace tr = reduce_fully(a);
    const bool final_irred = col_irreducible(tr.final);
    if (opt.json) {
        ordered_json payload = trace_json(tr);
        payload["final_col_irreducible"] = final_irred;
        emit_json("reduce", a, std::move(payload),
                  {{"final state valid", validate(tr.final).valid},
                   {"final col-irreducible or blocked", final_irred || tr.blocked}});
    } else {
        std::cout << "input: " << a.k << " x " << a.n << "\n";
        print_trace_text(tr);
        std::cout << "final: " << tr.final.k << " x " << tr.final.n << "\n";
        for (int r = 0; r < tr.final.k; ++r)
            std::cout << "  " << entries_text(tr.final.row[r], tr.final.n) << "\n";
        std::cout << "col-irreducible: " << yesno(final_irred) << "\n";
    }
    return 0;
}

int cmd_certify_min(const GenMatrix& a, const Options& opt) {
    const auto cert = minimality_certificate(a);
    const auto pivots = irreducibility_certificate(a);
    const bool distinct = kernels_distinct(a);
    if (opt.json) {
        ordered_json payload{{"matrix", matrix_json(a)},
                             {"col_irreducible", pivots.has_value()},
                             {"kernels_distinct", distinct}};
        if (cert) {
            ordered_json pj = ordered_json::array();
            for (std::size_t j = 0; j < cert->pivot_row.size(); ++j)
                pj.push_back(ordered_json{{"column", j + 1},
                                          {"pivot_row", row_label(cert->pivot_row[j])}});
            payload["certificate"] = ordered_json{{"dimension", cert->dimension},
                                                  {"pivots", std::move(pj)},
                                                  {"phi_columns", cert->phi_columns}};
        }
        emit_json("certify-min", a, std::move(payload),
                  {{"col-irreducible", pivots.has_value()},
                   {"kernels distinct", distinct},
                   {"minimality certified", cert.has_value()}});
    } else {
        std::cout << "col-irreducible: " << yesno(pivots.has_value()) << "\n";
        std::cout << "kernels distinct: " << yesno(distinct) << "\n";
        if (cert) {
            std::cout << "certified minimal dimension: " << cert->dimension << "\n";
            for (std::size_t j = 0; j < cert->pivot_row.size(); ++j)
                std::cout << "  column " << j + 1 << " pinned by "
                          << row_label(cert->pivot_row[j]) << "\n";
        } else {
            std::cout << "no minimality certificate\n";
        }
    }
    return cert ? 0 : 1;
}

ordered_json digest_json(const SearchDigest& d) {
    ordered_json ce = ordered_json::array();
    for (const GenMatrix& m : d.counterexamples) ce.push_back(matrix_json(m));
    return ordered_json{{"k", d.k},
                        {"n", d.n},
                        {"multisets_raw", d.multisets_raw},
                        {"leaves", d.leaves},
                        {"valid", d.valid},
                        {"irreducible", d.irreducible},
                        {"law_violations", d.law_violations},
                        {"valid_hash", hex64(d.valid_hash)},
                        {"counterexamples", std::move(ce)}};
}

void print_digest_text(const SearchDigest& d) {
    std::cout << "exhaustive reducibility sweep, k = " << d.k << ", n = " << d.n << "\n";
    std::cout << "  column multisets (raw space): " << d.multisets_raw << "\n";
    std::cout << "  multisets completed after pruning: " << d.leaves << "\n";
    std::cout << "  valid matrices: " << d.valid << "\n";
    std::cout << "  col-irreducible valid matrices: " << d.irreducible << "\n";
    std::cout << "  one-count law violations: " << d.law_violations << "\n";
    std::cout << "  valid-set hash: " << hex64(d.valid_hash) << "\n";
}

ordered_json counting_json(const K4CountingTrace& tr) {
    ordered_json cj = ordered_json::array();
    for (const auto& [name, pass] : tr.checks)
        cj.push_back(ordered_json{{"name", name}, {"pass", pass}});
    return ordered_json{{"checks", std::move(cj)},
                        {"triple_assignments", tr.triple_assignments},
                        {"conclusion", tr.conclusion}};
}

ordered_json sampling_json(const SamplingDigest& d) {
    return ordered_json{{"k", d.k},           {"n", d.n},
                        {"seed", d.seed},     {"samples", d.samples},
                        {"valid", d.valid},   {"irreducible", d.irreducible},
                        {"law_violations", d.law_violations}};
}

int cmd_vasquez_report(int k, bool verify_upper, long long samples, const Options& opt) {
    VasquezReport r = n_d_report(k, verify_upper, opt.jobs);
    if (verify_upper && k == 4 && samples != 1000000 && samples > 0)
        r.sampling = random_reducibility_sweep(4, 11, samples, 20260814);
    std::vector<std::pair<std::string, bool>> checks = {
        {"lower bound certified", r.lower_certified},
        {"upper bound evidence consistent", r.exact ? *r.exact == r.lower : r.lower <= r.upper},
    };
    if (r.upper_search) checks.push_back({"upper search found no col-irreducible",
                                          r.upper_search->irreducible == 0});
    if (r.counting) checks.push_back({"counting argument conclusion", r.counting->conclusion});
    if (r.sampling) checks.push_back({"sampling sweep found no col-irreducible",
                                      r.sampling->irreducible == 0});
    if (opt.json) {
        ordered_json payload{{"k", r.k},
                             {"holonomy", holonomy_name(r.k)},
                             {"lower", r.lower},
                             {"upper", r.upper},
                             {"lower_certified", r.lower_certified},
                             {"upper_evidence", r.upper_evidence}};
        if (r.exact) payload["exact"] = *r.exact;
        if (r.upper_search) payload["upper_search"] = digest_json(*r.upper_search);
        if (r.counting) payload["counting"] = counting_json(*r.counting);
        if (r.sampling) payload["sampling"] = sampling_json(*r.sampling);
        std::cout << make_certificate("vasquez", "k=" + std::to_string(k),
                                      std::move(payload), checks_json(checks))
                         .dump(2)
                  << "\n";
    } else {
        if (r.exact)
            std::cout << "n_d(" << holonomy_name(k) << ") = " << *r.exact << " (exact)\n";
        else
            std::cout << "n_d(" << holonomy_name(k) << ") in [" << r.lower << ", "
                      << r.upper << "]\n";
        std::cout << "lower bound: " << r.lower << " ("
                  << (r.lower_certified ? "certified construction" : "formula only")
                  << ")\n";
        std::cout << "upper bound: " << r.upper << " (" << r.upper_evidence << ")\n";
        if (r.upper_search) print_digest_text(*r.upper_search);
        if (r.counting) {
            std::cout << "counting argument (" << r.counting->triple_assignments
                      << " triple assignments checked):\n";
            for (const auto& [name, pass] : r.counting->checks)
                std::cout << "  [" << (pass ? "ok" : "FAIL") << "] " << name << "\n";
        }
        if (r.sampling)
            std::cout << "sampling sweep: " << r.sampling->valid << " valid in "
                      << r.sampling->samples << " samples, " << r.sampling->irreducible
                      << " col-irreducible, " << r.sampling->law_violations
                      << " law violations\n";
    }
    bool ok = true;
    for (const auto& [name, pass] : checks) ok = ok && pass;
    return ok ? 0 : 1;
}

int cmd_vasquez_reducibility(int k, int n, bool force, const Options& opt) {
    const SearchDigest d = exhaustive_reducibility(k, n, opt.jobs, force);
    if (opt.json) {
        std::cout << make_certificate(
                         "reducibility",
                         "k=" + std::to_string(k) + " n=" + std::to_string(n),
                         digest_json(d),
                         checks_json({{"no col-irreducible valid matrix",
                                       d.irreducible == 0},
                                      {"no one-count law violation",
                                       d.law_violations == 0}}))
                         .dump(2)
                  << "\n";
    } else {
        print_digest_text(d);
    }
    return d.irreducible == 0 ? 0 : 1;
}

int cmd_classify(const GenMatrix& a, const Options& opt) {
    const DiffuseClassification cl = classify_c22(a);
    const bool nondiffuse = cl.verdict == DiffuseClassification::Verdict::NonDiffuse;
    if (opt.json) {
        ordered_json payload{{"matrix", matrix_json(a)},
                             {"verdict", nondiffuse ? "non-diffuse" : "diffuse"},
                             {"center_rank", cl.center_rank},
                             {"fixed_columns", cols1_json(cl.fixed_columns)}};
        if (cl.witness) payload["witness"] = witness_json(*cl.witness);
        emit_json("classify", a, std::move(payload),
                  {{"witness verified", cl.witness ? cl.witness->ok() : !nondiffuse}});
    } else {
        std::cout << "verdict: " << (nondiffuse ? "non-diffuse" : "diffuse") << "\n";
        std::cout << "center rank (betti1): " << cl.center_rank << "\n";
        std::cout << "holonomy-fixed columns: " << cols1_text(cl.fixed_columns) << "\n";
        if (cl.witness) print_witness_text(*cl.witness);
    }
    return nondiffuse ? 0 : 1;
}

int cmd_witness(const GenMatrix& a, const Options& opt) {
    const DeltaPWitness w = deltap_witness(a);
    if (opt.json) {
        emit_json("witness", a, witness_json(w),
                  {{"relation 1", w.relation1},
                   {"relation 2", w.relation2},
                   {"squares independent", w.independence_rank == 3}});
    } else {
        print_witness_text(w);
    }
    return w.ok() ? 0 : 1;
}

int cmd_pipeline(const GenMatrix& a, const Options& opt) {
    const PipelineTrace tr = nondiffuse_pipeline(a);
    if (opt.json) {
        ordered_json steps = ordered_json::array();
        for (const PipelineStep& st : tr.steps) {
            if (st.kind == PipelineStep::Kind::Quotient) {
                steps.push_back(ordered_json{{"kind", "quotient"},
                                             {"trace", trace_json(st.reduction)},
                                             {"state", matrix_json(st.state)}});
            } else {
                steps.push_back(
                    ordered_json{{"kind", "hyperplane"},
                                 {"functional", st.hyperplane.functional},
                                 {"basis", labels_json(st.hyperplane.basis)},
                                 {"state", matrix_json(st.state)}});
            }
        }
        ordered_json payload{{"input", matrix_json(a)},
                             {"steps", std::move(steps)},
                             {"terminal", matrix_json(tr.terminal_matrix)},
                             {"witness", witness_json(tr.witness)}};
        emit_json("pipeline", a, std::move(payload),
                  {{"terminal holonomy C2^2", tr.terminal_matrix.k == 2},
                   {"terminal betti1 = 0", betti1(tr.terminal_matrix) == 0},
                   {"witness verified", tr.witness.ok()}});
    } else {
        std::cout << "input: " << a.k << " x " << a.n << " (holonomy "
                  << holonomy_name(a.k) << ")\n";
        for (const PipelineStep& st : tr.steps) {
            if (st.kind == PipelineStep::Kind::Quotient) {
                print_trace_text(st.reduction);
            } else {
                std::cout << "hyperplane: restrict to kernel of functional "
                          << st.hyperplane.functional << ", basis "
                          << labels_text(st.hyperplane.basis) << "\n";
            }
            std::cout << "state: " << st.state.k << " x " << st.state.n << "\n";
            for (int r = 0; r < st.state.k; ++r)
                std::cout << "  " << entries_text(st.state.row[r], st.state.n) << "\n";
        }
        std::cout << "terminal: " << tr.terminal_matrix.k << " x "
                  << tr.terminal_matrix.n << "\n";
        print_witness_text(tr.witness);
    }
    return tr.witness.ok() ? 0 : 1;
}

int cmd_enumerate(int k, int n, bool show_all, long long limit, const Options& opt) {
    const std::vector<GenMatrix> reps = enumerate_valid(k, n, opt.jobs, true);
    if (opt.json) {
        ordered_json ms = ordered_json::array();
        long long shown = 0;
        for (const GenMatrix& m : reps) {
            if (!show_all && shown >= limit) break;
            ms.push_back(matrix_json(m));
            ++shown;
        }
        ordered_json payload{{"k", k},
                             {"n", n},
                             {"count_up_to_equivalence", reps.size()},
                             {"matrices", std::move(ms)}};
        std::cout << make_certificate("enumerate",
                                      "k=" + std::to_string(k) + " n=" + std::to_string(n),
                                      std::move(payload), checks_json({}))
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "valid matrices with k = " << k << ", n = " << n << ": "
                  << reps.size() << " up to equivalence\n";
        long long shown = 0;
        for (const GenMatrix& m : reps) {
            if (!show_all && shown >= limit) {
                std::cout << "... (" << reps.size() - shown << " more)\n";
                break;
            }
            for (int r = 0; r < m.k; ++r)
                std::cout << (r ? "  " : "- ") << entries_text(m.row[r], m.n) << "\n";
            ++shown;
        }
    }
    return 0;
}

int cmd_example(const std::string& name, const Options& opt) {
    if (name.empty()) {
        if (opt.json) {
            ordered_json list = ordered_json::array();
            for (const NamedExample& e : examples())
                list.push_back(ordered_json{{"name", e.name},
                                            {"note", e.note},
                                            {"k", e.matrix.k},
                                            {"n", e.matrix.n}});
            std::cout << ordered_json{{"examples", std::move(list)}}.dump(2) << "\n";
        } else {
            for (const NamedExample& e : examples())
                std::cout << e.name << "  (" << e.matrix.k << " x " << e.matrix.n
                          << "): " << e.note << "\n";
        }
        return 0;
    }
    for (const NamedExample& e : examples()) {
        if (e.name == name) {
            if (opt.json)
                std::cout << ordered_json{{"name", e.name},
                                          {"note", e.note},
                                          {"matrix", matrix_json(e.matrix)}}
                                 .dump(2)
                          << "\n";
            else
                std::cout << matrix_to_file_text(e.matrix);
            return 0;
        }
    }
    throw parse_error(1, 1, "unknown example: " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus for flat manifolds of diagonal type"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.json, "emit a JSON certificate instead of text");
    app.add_option("--jobs", opt.jobs, "worker threads for searches")
        ->check(CLI::Range(1, 32));

    std::string matrix_arg;
    auto add_matrix_cmd = [&](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("matrix", matrix_arg, "matrix file path or example:NAME")
            ->required();
        return sub;
    };

    CLI::App* sc_validate =
        add_matrix_cmd("validate", "torsion-freeness, faithfulness, one-count law");
    CLI::App* sc_closure = add_matrix_cmd("closure", "print the star-closure and phi image");
    CLI::App* sc_reduce = add_matrix_cmd("reduce", "greedy column reduction with trace");
    CLI::App* sc_certify =
        add_matrix_cmd("certify-min", "certificate that no smaller quotient exists");
    CLI::App* sc_classify =
        add_matrix_cmd("classify", "decide diffuse vs non-diffuse (holonomy C2^2)");
    CLI::App* sc_witness =
        add_matrix_cmd("witness", "Delta_P witness for a betti1 = 0 C2^2 matrix");
    CLI::App* sc_pipeline =
        add_matrix_cmd("pipeline", "non-diffuseness certificate for betti1 = 0 matrices");

    CLI::App* sc_vasquez =
        app.add_subcommand("vasquez", "minimal fibering dimensions n_d(C2^k)");
    int vk = 2;
    bool verify_upper = false;
    long long samples = 1000000;
    std::vector<int> red_pair;
    bool force = false;
    sc_vasquez->add_option("--k", vk, "holonomy rank")->check(CLI::Range(1, 20));
    sc_vasquez->add_flag("--verify-upper", verify_upper,
                         "recompute the heavy upper-bound evidence");
    sc_vasquez->add_option("--samples", samples,
                           "valid samples for the k=4 sampling sweep");
    sc_vasquez
        ->add_option("--reducibility", red_pair,
                     "run the exhaustive (k n) reducibility sweep instead")
        ->expected(2);
    sc_vasquez->add_flag("--force", force, "allow non-standard sweep sizes");

    CLI::App* sc_enum = app.add_subcommand("enumerate", "all valid matrices (k <= 3)");
    int ek = 2, en = 3;
    bool show_all = false;
    long long limit = 10;
    sc_enum->add_option("--k", ek, "holonomy rank")->required()->check(CLI::Range(1, 3));
    sc_enum->add_option("--n", en, "columns")->required()->check(CLI::Range(1, 12));
    sc_enum->add_flag("--all", show_all, "print every representative");
    sc_enum->add_option("--limit", limit, "print at most this many (default 10)");

    CLI::App* sc_example = app.add_subcommand("example", "list or print named examples");
    std::string example_name;
    sc_example->add_option("name", example_name, "example name (omit to list)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*sc_validate) return cmd_validate(resolve_matrix_argument(matrix_arg), opt);
        if (*sc_closure) return cmd_closure(resolve_matrix_argument(matrix_arg), opt);
        if (*sc_reduce) return cmd_reduce(resolve_matrix_argument(matrix_arg), opt);
        if (*sc_certify) return cmd_certify_min(resolve_matrix_argument(matrix_arg), opt);
        if (*sc_classify) return cmd_classify(resolve_matrix_argument(matrix_arg), opt);
        if (*sc_witness) return cmd_witness(resolve_matrix_argument(matrix_arg), opt);
        if (*sc_pipeline) return cmd_pipeline(resolve_matrix_argument(matrix_arg), opt);
        if (*sc_vasquez) {
            if (!red_pair.empty())
                return cmd_vasquez_reducibility(red_pair[0], red_pair[1], force, opt);
            return cmd_vasquez_report(vk, verify_upper, samples, opt);
        }
        if (*sc_enum) return cmd_enumerate(ek, en, show_all, limit, opt);
        if (*sc_example) return cmd_example(example_name, opt);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nondiagonal_quotient_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
