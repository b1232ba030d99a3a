#include "cli_app.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "CLI11.hpp"
#include "affpr/errors.hpp"
#include "affpr/harmonics.hpp"
#include "affpr/heisenberg.hpp"
#include "affpr/matrix_recovery.hpp"
#include "affpr/random.hpp"
#include "affpr/retrieval_diagnostics.hpp"
#include "json_io.hpp"

namespace affpr::cli {

namespace {

using io::Json;

struct Inputs {
    int p = 0;
    int n = 0;
    std::string phi, matrix, vector, measurements, frame, psi, group_file, group_name, moduli, patches, f, g;
    bool time_side = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t reference = 0;
    int k0 = 0, l0 = 1;
    std::string p_list = "3,5,7,11,13";
    std::string solver = "linear";
};

std::uint64_t effective_seed(const Inputs& in) { return in.seed_given ? in.seed : seed_from_environment(); }

Json real_vector_json(const VectorXc& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(io::to_json(v(i)));
    return out;
}

ComplexVector load_generator(const Inputs& in) {
    auto phi = io::vector_from_json(io::read_json_file(in.phi));
    if (in.p != 0 && static_cast<int>(phi.size()) != in.p - 1)
        throw ValidationError("generator length does not match --p");
    return phi;
}

GroupFunction load_measurements(const Inputs& in) {
    auto f = io::measurement_from_json(io::read_json_file(in.measurements));
    if (in.p != 0 && f.modulus().value() != in.p) throw ValidationError("measurement file p does not match --p");
    return f;
}

std::vector<Permutation> named_group(const std::string& name) {
    const auto colon = name.find(':');
    if (colon == std::string::npos) throw ValidationError("group name must look like symmetric:N, affine:P or pgl2:Q");
    const std::string kind = name.substr(0, colon);
    int size = 0;
    try {
        size = std::stoi(name.substr(colon + 1));
    } catch (const std::exception&) {
        throw ValidationError("group name has no valid size: " + name);
    }
    if (kind == "symmetric") {
        if (size < 1 || size > 8) throw ValidationError("symmetric groups are limited to n <= 8");
        return symmetric_group(size);
    }
    if (kind == "affine") return affine_permutations(PrimeModulus(size));
    if (kind == "pgl2") return projective_linear_group(PrimeModulus(size));
    throw ValidationError("unknown group kind: " + kind);
}

std::vector<Permutation> load_group(const Inputs& in) {
    if (!in.group_file.empty()) return io::permutations_from_json(io::read_json_file(in.group_file));
    if (!in.group_name.empty()) return named_group(in.group_name);
    throw ValidationError("a permutation group is required (--group or --group-name)");
}

FrameSystem load_frame(const Inputs& in) {
    if (!in.frame.empty()) {
        const Json j = io::read_json_file(in.frame);
        if (!j.is_object() || !j.contains("vectors") || !j.at("vectors").is_array() || j.at("vectors").empty())
            throw ValidationError("frame: \"vectors\" must be a nonempty array");
        std::vector<ComplexVector> vs;
        for (const auto& v : j.at("vectors")) vs.push_back(io::vector_from_json(v));
        std::vector<std::string> labels;
        if (j.contains("labels"))
            for (const auto& l : j.at("labels")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
        return {std::move(vs), std::move(labels)};
    }
    if (in.psi.empty()) throw ValidationError("a frame is required (--frame, or --psi with an optional group)");
    const auto psi = io::vector_from_json(io::read_json_file(in.psi));
    if (in.group_file.empty() && in.group_name.empty()) return affine_orbit(psi);
    return permutation_orbit(load_group(in), psi);
}

Json report_to_json(const GeneratorReport& r) {
    Json out;
    out["p"] = r.p;
    out["admissible"] = r.admissible;
    out["reason"] = r.reason();
    out["cond_i_holds"] = r.cond_i_holds;
    out["cond_i_values"] = real_vector_json(r.cond_i_values);
    out["failing_characters"] = r.failing_characters;
    out["cond_ii_holds"] = r.cond_ii_holds;
    out["b_phi_rank"] = r.b_phi_rank;
    out["b_phi"] = io::to_json(r.b_phi);
    return out;
}

Json complement_to_json(const ComplementReport& r, const FrameSystem& fs) {
    Json out;
    out["holds"] = r.holds;
    out["exhaustive"] = r.exhaustive;
    out["subsets_covered"] = r.subsets_covered;
    out["vectors"] = fs.size();
    out["dimension"] = fs.dimension();
    Json witness = Json::array();
    for (int i : r.witness) witness.push_back(fs.labels()[static_cast<std::size_t>(i)]);
    out["witness"] = witness;
    return out;
}

// ---------------------------------------------------------------- commands

Json cmd_check_generator(const Inputs& in) { return report_to_json(check_generator(load_generator(in))); }

Json cmd_gen_vector(const Inputs& in) {
    const PrimeModulus p(in.p);
    return io::to_json(in.time_side ? canonical_time_generator(p) : canonical_generator(p));
}

Json cmd_forward(const Inputs& in) {
    const auto phi = load_generator(in);
    if (!in.matrix.empty() && !in.vector.empty()) throw ValidationError("forward takes --matrix or --vector, not both");
    if (!in.vector.empty()) {
        const auto f = io::vector_from_json(io::read_json_file(in.vector));
        return io::measurement_to_json(intensity_measure(f, phi));
    }
    if (in.matrix.empty()) throw ValidationError("forward needs --matrix or --vector");
    return io::measurement_to_json(forward_measure(io::matrix_from_json(io::read_json_file(in.matrix)), phi));
}

Json residual_json(const GroupFunction& predicted, const GroupFunction& measured) {
    Json out;
    const double scale = measured.values().cwiseAbs().maxCoeff();
    const double worst = (predicted.values() - measured.values()).cwiseAbs().maxCoeff();
    out["max_abs"] = worst;
    out["relative"] = scale == 0.0 ? 0.0 : worst / scale;
    return out;
}

Json cmd_recover_matrix(const Inputs& in) {
    const auto phi = load_generator(in);
    const auto f = load_measurements(in);
    const auto a = recover_matrix(f, phi);
    Json out;
    out["matrix"] = io::to_json(a);
    out["residual"] = residual_json(forward_measure(a, phi), f);
    return out;
}

Json cmd_recover_vector(const Inputs& in) {
    const auto phi = load_generator(in);
    const auto f = load_measurements(in);
    if (f.values().imag().cwiseAbs().maxCoeff() > 0.0)
        throw ValidationError("recover-vector expects real intensity measurements");
    const auto v = recover_vector(f, phi);
    Json out;
    out["vector"] = io::to_json(v);
    out["residual"] = residual_json(intensity_measure(v, phi), f);
    return out;
}

Json cmd_heisenberg(const std::string& action, const Inputs& in) {
    require_heisenberg_size(in.n);
    const auto phi = io::vector_from_json(io::read_json_file(in.phi));
    if (static_cast<int>(phi.size()) != in.n) throw ValidationError("generator length does not match --n");
    if (action == "check") {
        const auto r = heisenberg_report(phi);
        Json out;
        out["n"] = r.n;
        out["admissible"] = r.admissible;
        out["min_ambiguity_modulus"] = r.min_modulus;
        if (!r.admissible) out["zero_at"] = Json::array({r.zero_k, r.zero_l});
        out["ambiguity"] = io::heisenberg_to_json(r.ambiguity);
        return out;
    }
    if (action == "forward") {
        if (!in.vector.empty()) return io::heisenberg_to_json(h_intensity(io::vector_from_json(io::read_json_file(in.vector)), phi));
        if (in.matrix.empty()) throw ValidationError("heisenberg forward needs --matrix or --vector");
        return io::heisenberg_to_json(h_forward(io::matrix_from_json(io::read_json_file(in.matrix)), phi));
    }
    const auto f = io::heisenberg_from_json(io::read_json_file(in.measurements));
    const auto a = h_recover(f, phi);
    Json out;
    out["matrix"] = io::to_json(a);
    const auto back = h_forward(a, phi);
    out["residual"] = (back.values() - f.values()).cwiseAbs().maxCoeff();
    return out;
}

Json cmd_diagnostics(const std::string& action, const Inputs& in) {
    if (action == "complement") {
        const auto fs = load_frame(in);
        if (in.samples > 0) {
            Rng rng(effective_seed(in));
            return complement_to_json(complement_property_sampled(fs, in.samples, rng), fs);
        }
        return complement_to_json(complement_property(fs), fs);
    }
    if (action == "full-spark") {
        const auto fs = load_frame(in);
        Json out;
        out["full_spark"] = full_spark(fs);
        out["vectors"] = fs.size();
        out["dimension"] = fs.dimension();
        return out;
    }
    if (action == "conj-pr") {
        Eigen::MatrixXd d;
        if (!in.moduli.empty()) {
            const Json j = io::read_json_file(in.moduli);
            d = io::real_matrix_from_json(j.is_object() && j.contains("moduli") ? j.at("moduli") : j, "moduli");
        } else if (!in.vector.empty()) {
            const auto f = io::vector_from_json(io::read_json_file(in.vector));
            const auto group = load_group(in);
            d = pairwise_moduli(difference_coefficients(f, in.k0, in.l0, group), in.k0, in.l0, group);
        } else {
            throw ValidationError("conj-pr needs --moduli, or --vector with a doubly transitive group");
        }
        Json out;
        out["vector"] = io::to_json(conjugate_phase_reconstruct(d));
        out["moduli"] = io::real_matrix_to_json(d);
        return out;
    }
    if (action == "stitch") {
        int n = 0;
        const auto patches = io::patches_from_json(io::read_json_file(in.patches), n);
        Json out;
        out["vector"] = io::to_json(phase_propagation_stitch(patches, n, in.reference));
        return out;
    }
    if (action == "three-transitive") {
        const auto f = io::vector_from_json(io::read_json_file(in.vector));
        const auto group = load_group(in);
        ComplexVector psi0 = canonical_time_generator(PrimeModulus(3));
        if (!in.psi.empty()) psi0 = io::vector_from_json(io::read_json_file(in.psi));
        ComplexVector psi(f.index());
        for (int i = 0; i < 3; ++i) psi(i) = psi0(i);
        ThreeTransitiveOptions opt;
        opt.seed = effective_seed(in);
        if (in.solver == "gauss-newton") opt.solver = LocalSolver::kGaussNewton;
        else if (in.solver != "linear") throw ValidationError("solver must be linear or gauss-newton");
        const auto g = three_transitive_phase_retrieval(permutation_moduli(f, group, psi), group, psi0, opt);
        Json out;
        out["vector"] = io::to_json(g);
        out["phase_distance"] = phase_distance(g, f);
        return out;
    }
    if (action == "pauli") {
        const auto f = io::vector_from_json(io::read_json_file(in.f));
        const auto g = io::vector_from_json(io::read_json_file(in.g));
        const auto r = pauli_pair_family(f, g);
        Json out;
        out["p"] = r.p;
        out["time_moduli_equal"] = r.time_moduli_equal;
        out["fourier_moduli_equal"] = r.fourier_moduli_equal;
        out["max_time_deviation"] = r.max_time_deviation;
        out["max_fourier_deviation"] = r.max_fourier_deviation;
        out["all_equal"] = r.all_equal();
        return out;
    }
    // projection-pr
    Eigen::MatrixXd m;
    if (!in.moduli.empty()) {
        const Json j = io::read_json_file(in.moduli);
        m = io::real_matrix_from_json(j.is_object() && j.contains("moduli") ? j.at("moduli") : j, "moduli");
    } else if (!in.vector.empty()) {
        m = projection_moduli(io::vector_from_json(io::read_json_file(in.vector)));
    } else {
        throw ValidationError("projection-pr needs --moduli or --vector");
    }
    Json out;
    out["vector"] = io::to_json(recover_from_projections(m));
    out["moduli"] = io::real_matrix_to_json(m);
    return out;
}

Json cmd_counterexample() {
    const auto r = verify_counterexample_n3();
    Json out;
    out["passed"] = r.passed();
    out["y_sum"] = r.y_sum;
    out["z_sum"] = r.z_sum;
    out["identity_modulus_residual"] = r.identity_modulus_residual;
    out["identity_real_residual"] = r.identity_real_residual;
    out["coefficient_residual"] = r.coefficient_residual;
    out["distance_plain"] = r.distance_plain;
    out["distance_conjugate"] = r.distance_conjugate;
    out["non_equivalent"] = r.non_equivalent;
    out["constant_scaling"] = r.constant_scaling;
    out["constant_residual"] = r.constant_residual;
    out["displayed_constant"] = r.displayed_constant;
    out["text_constant"] = r.text_constant;
    out["matching_constant"] = r.matching_constant;
    out["constant_inner_product"] = r.constant_inner_product;
    out["failures"] = r.failures;
    return out;
}

Json cmd_bench(const Inputs& in, bool& failed) {
    std::vector<int> primes;
    std::stringstream list(in.p_list);
    for (std::string item; std::getline(list, item, ',');) {
        try {
            primes.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ValidationError("--p-list must be comma-separated integers");
        }
    }
    Rng rng(effective_seed(in));
    Json rows = Json::array();
    failed = false;
    for (int p : primes) {
        const PrimeModulus mod(p);
        const auto phi = canonical_generator(mod);
        const auto idx = IndexSet::range(1, p - 1);
        const auto start = std::chrono::steady_clock::now();
        const RecoveryPlan plan(phi);
        double basis_error = 0.0;
        for (int m = 1; m < p; ++m)
            for (int n = 1; n < p; ++n) {
                ComplexMatrix e(idx, idx);
                e(m, n) = 1.0;
                basis_error = std::max(basis_error, (plan.recover(forward_measure(e, phi)).values() - e.values()).norm());
            }
        double random_error = 0.0;
        for (int t = 0; t < 5; ++t) {
            const auto a = random_matrix(idx, idx, rng);
            random_error = std::max(random_error, (plan.recover(forward_measure(a, phi)).values() - a.values()).norm() / a.norm());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        Json row;
        row["p"] = p;
        row["basis_max_relative_error"] = basis_error;
        row["random_max_relative_error"] = random_error;
        row["seconds"] = seconds;
        rows.push_back(row);
        if (basis_error > 1e-9 || random_error > 1e-9) failed = true;
    }
    Json out;
    out["tolerance"] = 1e-9;
    out["rows"] = rows;
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Phase retrieval and matrix recovery for affine-group frames"};
    app.require_subcommand(1);
    Inputs in;
    auto seed_option = [&](CLI::App* cmd) {
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t s) { in.seed = s, in.seed_given = true; },
            "Random seed (defaults to SEED in the environment)");
    };

    auto* check = app.add_subcommand("check-generator", "Admissibility report for a generator");
    check->add_option("--p", in.p, "Prime")->required();
    check->add_option("--phi", in.phi, "Generator vector JSON on {1..p-1}")->required();

    auto* gen = app.add_subcommand("gen-vector", "Canonical generator");
    gen->add_option("--p", in.p, "Prime")->required();
    gen->add_flag("--time-side", in.time_side, "Time-domain vector on {0..p-1}");

    auto* forward = app.add_subcommand("forward", "Measurements of a matrix, or intensities of a vector");
    forward->add_option("--p", in.p, "Prime")->required();
    forward->add_option("--phi", in.phi, "Generator vector JSON")->required();
    forward->add_option("--matrix", in.matrix, "Matrix JSON on {1..p-1}^2");
    forward->add_option("--vector", in.vector, "Vector JSON on {1..p-1}");

    auto* rmat = app.add_subcommand("recover-matrix", "Matrix from its measurements");
    auto* rvec = app.add_subcommand("recover-vector", "Vector up to phase from intensities");
    for (auto* cmd : {rmat, rvec}) {
        cmd->add_option("--p", in.p, "Prime")->required();
        cmd->add_option("--phi", in.phi, "Generator vector JSON")->required();
        cmd->add_option("--measurements", in.measurements, "Measurement file")->required();
    }

    auto* heis = app.add_subcommand("heisenberg", "Finite Heisenberg group counterpart");
    heis->require_subcommand(1);
    heis->add_option("--n", in.n, "Group size n >= 2")->required();
    auto* h_check = heis->add_subcommand("check", "Ambiguity-function criterion");
    auto* h_forward = heis->add_subcommand("forward", "Measurements");
    auto* h_recover = heis->add_subcommand("recover", "Matrix recovery");
    for (auto* cmd : {h_check, h_forward, h_recover})
        cmd->add_option("--phi", in.phi, "Generator vector JSON on {0..n-1}")->required();
    h_forward->add_option("--matrix", in.matrix, "Matrix JSON on {0..n-1}^2");
    h_forward->add_option("--vector", in.vector, "Vector JSON on {0..n-1}");
    h_recover->add_option("--measurements", in.measurements, "Heisenberg measurement file")->required();

    auto* diag = app.add_subcommand("diagnostics", "Frame diagnostics and auxiliary pipelines");
    diag->require_subcommand(1);
    auto* d_comp = diag->add_subcommand("complement", "Complement property");
    auto* d_spark = diag->add_subcommand("full-spark", "Full spark test");
    for (auto* cmd : {d_comp, d_spark}) {
        cmd->add_option("--frame", in.frame, "Frame JSON {\"vectors\": [...]}");
        cmd->add_option("--psi", in.psi, "Generator; orbit under the affine group or --group");
        cmd->add_option("--group", in.group_file, "Permutation group JSON");
        cmd->add_option("--group-name", in.group_name, "symmetric:N, affine:P or pgl2:Q");
    }
    d_comp->add_option("--samples", in.samples, "Random subsets instead of the exhaustive scan");
    seed_option(d_comp);
    auto* d_conj = diag->add_subcommand("conj-pr", "Conjugate phase retrieval from pairwise moduli");
    d_conj->add_option("--moduli", in.moduli, "Symmetric matrix of |f(i) - f(j)|");
    d_conj->add_option("--vector", in.vector, "Vector whose difference coefficients are measured");
    d_conj->add_option("--group", in.group_file, "Permutation group JSON");
    d_conj->add_option("--group-name", in.group_name, "symmetric:N, affine:P or pgl2:Q");
    d_conj->add_option("--k0", in.k0, "First point of the difference vector");
    d_conj->add_option("--l0", in.l0, "Second point of the difference vector");
    auto* d_stitch = diag->add_subcommand("stitch", "Phase propagation over 3-point patches");
    d_stitch->add_option("--patches", in.patches, "Patch JSON")->required();
    d_stitch->add_option("--reference", in.reference, "Reference patch position");
    auto* d_three = diag->add_subcommand("three-transitive", "Phase retrieval for a 3-fold transitive group");
    d_three->add_option("--vector", in.vector, "Vector on {0..n-1} to measure")->required();
    d_three->add_option("--group", in.group_file, "Permutation group JSON");
    d_three->add_option("--group-name", in.group_name, "symmetric:N, affine:P or pgl2:Q");
    d_three->add_option("--psi0", in.psi, "Zero-sum window on {0,1,2}");
    d_three->add_option("--solver", in.solver, "linear or gauss-newton");
    seed_option(d_three);
    auto* d_pauli = diag->add_subcommand("pauli", "Pauli-pair report for f and g");
    d_pauli->add_option("--f", in.f, "Vector JSON on Z_p")->required();
    d_pauli->add_option("--g", in.g, "Vector JSON on Z_p")->required();
    auto* d_proj = diag->add_subcommand("projection-pr", "Recovery from frequency-deleted moduli");
    d_proj->add_option("--moduli", in.moduli, "(p-1) x p table of |P_l f|");
    d_proj->add_option("--vector", in.vector, "Vector in H_0 whose projections are measured");

    app.add_subcommand("demo-counterexample", "Verify the n = 3 counterexamples");
    auto* bench = app.add_subcommand("bench", "Recovery runtimes and round-trip errors");
    bench->add_option("--p-list", in.p_list, "Comma-separated primes");
    seed_option(bench);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        Json result;
        bool failed = false;
        if (check->parsed()) result = cmd_check_generator(in);
        else if (gen->parsed()) result = cmd_gen_vector(in);
        else if (forward->parsed()) result = cmd_forward(in);
        else if (rmat->parsed()) result = cmd_recover_matrix(in);
        else if (rvec->parsed()) result = cmd_recover_vector(in);
        else if (heis->parsed()) result = cmd_heisenberg(h_check->parsed() ? "check" : h_forward->parsed() ? "forward" : "recover", in);
        else if (diag->parsed()) {
            const auto* sub = diag->get_subcommands().front();
            result = cmd_diagnostics(sub->get_name(), in);
        } else if (bench->parsed()) result = cmd_bench(in, failed);
        else result = cmd_counterexample();
        out << result.dump(2) << "\n";
        if (failed) {
            err << "error: round-trip error exceeds tolerance\n";
            return kExitNumerical;
        }
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace affpr::cli
