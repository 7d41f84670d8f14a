#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "so3fit/errors.hpp"
#include "so3fit/fit.hpp"
#include "so3fit/fourier.hpp"
#include "so3fit/io.hpp"
#include "so3fit/kernels.hpp"
#include "so3fit/localize.hpp"
#include "so3fit/point_set.hpp"

namespace {

using namespace so3fit;

void write_output(const std::string& text, const std::string& path)
{
    if(path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if(!out)
        throw Error("cannot write file: " + path);
    out << text;
}

int run_coeffs(int m, int lmax, const std::string& out_path)
{
    const ChebSeries series = kernel_cheb_series(KernelOrder(m), lmax);
    std::string csv = "l,coeff\n";
    for(int l = 0; l <= lmax; ++l)
        csv += std::to_string(l) + "," + format_double(series.coeffs[l]) + "\n";
    write_output(csv, out_path);
    return 0;
}

int run_fit(int m, double lambda, bool lsq, int lsq_centers, const std::string& data_path,
    const std::string& out_path)
{
    const KernelOrder order(m);
    const Dataset ds = load_dataset(data_path);
    std::vector<Rotation> rotations = ds.rotations();
    const PointSet sites = point_set_stats(rotations, default_probe_count(rotations.size()));

    SplineModel model = [&]() {
        if(lsq) {
            int n_centers = lsq_centers > 0 ? lsq_centers
                : std::max<int>(polynomial_dimension(order.cpd_order()) + 8,
                      static_cast<int>(rotations.size()) / 4);
            n_centers = std::min<int>(n_centers, static_cast<int>(rotations.size()));
            // thin the data sites to a quasi-uniform center subset, then project
            std::vector<Rotation> centers(rotations.begin(), rotations.begin() + n_centers);
            if(n_centers < static_cast<int>(rotations.size())) {
                // farthest-point thinning over the data sites themselves
                centers.clear();
                std::vector<double> closest(rotations.size(), -1.0);
                std::size_t pick = 0;
                for(int c = 0; c < n_centers; ++c) {
                    if(c > 0) {
                        pick = 0;
                        for(std::size_t i = 1; i < rotations.size(); ++i)
                            if(closest[i] < closest[pick])
                                pick = i;
                    }
                    centers.push_back(rotations[pick]);
                    for(std::size_t i = 0; i < rotations.size(); ++i) {
                        const double d = std::abs(rotations[i].quaternion().coeffs().dot(
                            rotations[pick].quaternion().coeffs()));
                        closest[i] = std::max(closest[i], d);
                    }
                }
            }
            return least_squares_fit_samples(PointSet(centers), rotations, ds.values(), order);
        }
        if(lambda > 0)
            return tikhonov_fit(sites, ds.values(), lambda, order);
        return interpolate(sites, ds.values(), order);
    }();

    save_model(model, out_path);
    return 0;
}

int run_eval(const std::string& model_path, const std::string& points_path,
    const std::string& out_path)
{
    const SplineModel model = load_model(model_path);
    const std::vector<Rotation> pts = load_points(points_path);
    nlohmann::ordered_json root;
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for(const Rotation& x : pts) {
        const std::complex<double> v = evaluate_model(model, x);
        values.push_back({v.real(), v.imag()});
    }
    root["values"] = std::move(values);
    write_output(root.dump(2) + "\n", out_path);
    return 0;
}

int run_validate(const std::string& data_path, int L, double rho, int probes,
    std::uint64_t seed, const std::string& out_path)
{
    const Dataset ds = load_dataset(data_path);
    std::vector<Rotation> rotations = ds.rotations();
    const PointSet centers = point_set_stats(rotations, default_probe_count(rotations.size()));
    if(rho <= 0)
        rho = ckc_radius(L, centers.fill_distance());
    const CoefficientKernel ck(centers, L, rho);
    const CkcReport report = verify_ckc(ck, probes, seed);
    write_output(ckc_report_json(report, L, rho), out_path);
    return 0;
}

int run_convergence(int m, int L, int n_levels, int base_size, int quad_degree, int f_degree,
    int probes, std::uint64_t seed, const std::string& out_path)
{
    const KernelOrder order(m);
    std::vector<PointSet> levels;
    for(int k = 0; k < n_levels; ++k) {
        // sizes chosen so the fill distance roughly halves across the study
        const double factor = std::pow(8.0, static_cast<double>(k) / (n_levels - 1));
        const int size = static_cast<int>(std::lround(base_size * factor));
        levels.push_back(sample_points(size, SampleMode::quasi_uniform, seed + k));
    }
    const QuadratureRule rule = haar_quadrature(quad_degree);
    const FourierCoefficients f = character_coefficients(f_degree);
    const ConvergenceTable table =
        convergence_study(order, L, f, levels, rule, probes, seed + 1000);
    write_output(convergence_table_csv(table), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Surface-spline interpolation, smoothing and approximation on SO(3)"};
    app.require_subcommand(1);

    // coeffs
    auto* coeffs = app.add_subcommand("coeffs", "Dump the character-expansion coefficients");
    int m = 2, lmax = 20;
    std::string out_path;
    coeffs->add_option("--m", m, "Kernel order (>= 2)")->required();
    coeffs->add_option("--lmax", lmax, "Largest degree");
    coeffs->add_option("--out", out_path, "Output CSV path (default stdout)");

    // fit
    auto* fit = app.add_subcommand("fit", "Fit a model to a dataset");
    double lambda = 0;
    bool lsq = false;
    int lsq_centers = 0;
    std::string data_path, model_path;
    fit->add_option("--m", m, "Kernel order (>= 2)")->required();
    fit->add_option("--lambda", lambda, "Tikhonov smoothing parameter");
    fit->add_flag("--lsq", lsq, "Least-squares projection onto a thinned center set");
    fit->add_option("--centers", lsq_centers, "Center count for --lsq");
    fit->add_option("--data", data_path, "Input dataset JSON")->required();
    fit->add_option("--out", model_path, "Output model JSON")->required();

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a model at points");
    std::string points_path;
    eval->add_option("--model", model_path, "Model JSON")->required();
    eval->add_option("--points", points_path, "Points JSON")->required();
    eval->add_option("--out", out_path, "Output values JSON (default stdout)");

    // validate
    auto* validate = app.add_subcommand("validate", "Verify the coefficient kernel conditions");
    int L = 4, probes = 100;
    double rho = 0;
    std::uint64_t seed = 1;
    validate->add_option("--data", data_path, "Input dataset JSON")->required();
    validate->add_option("--L", L, "Polynomial precision")->required();
    validate->add_option("--rho", rho, "Support radius (default rho*(L, h))");
    validate->add_option("--probes", probes, "Probe count");
    validate->add_option("--seed", seed, "Random seed");
    validate->add_option("--out", out_path, "Output JSON (default stdout)");

    // convergence
    auto* conv = app.add_subcommand("convergence", "Run a convergence study");
    int n_levels = 3, base_size = 256, quad_degree = 10, f_degree = 2;
    conv->add_option("--m", m, "Kernel order (>= 2)")->required();
    conv->add_option("--L", L, "Polynomial precision")->required();
    conv->add_option("--levels", n_levels, "Number of refinement levels");
    conv->add_option("--base-size", base_size, "Coarsest center count");
    conv->add_option("--quad-degree", quad_degree, "Quadrature exactness degree");
    conv->add_option("--f-degree", f_degree, "Character degree of the target function");
    conv->add_option("--probes", probes, "Probe count for the sup error");
    conv->add_option("--seed", seed, "Random seed");
    conv->add_option("--out", out_path, "Output CSV (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if(coeffs->parsed())
            return run_coeffs(m, lmax, out_path);
        if(fit->parsed())
            return run_fit(m, lambda, lsq, lsq_centers, data_path, model_path);
        if(eval->parsed())
            return run_eval(model_path, points_path, out_path);
        if(validate->parsed())
            return run_validate(data_path, L, rho, probes, seed, out_path);
        if(conv->parsed())
            return run_convergence(m, L, n_levels, base_size, quad_degree, f_degree, probes,
                seed, out_path);
    } catch(const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch(const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch(const ConditioningError& e) {
        std::cerr << "conditioning error: " << e.what() << "\n";
        return 2;
    } catch(const UnisolvencyError& e) {
        std::cerr << "unisolvency error: " << e.what() << "\n";
        return 2;
    } catch(const DegenerateSetError& e) {
        std::cerr << "degenerate set: " << e.what() << "\n";
        return 2;
    } catch(const DensityError& e) {
        std::cerr << "density error: " << e.what() << "\n";
        return 2;
    } catch(const InvalidArgumentError& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch(const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
