#include "so3fit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "so3fit/errors.hpp"

namespace so3fit {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<Rotation> Dataset::rotations() const
{
    std::vector<Rotation> r;
    r.reserve(records.size());
    for(const DataRecord& rec : records)
        r.push_back(rec.rotation);
    return r;
}

Eigen::VectorXcd Dataset::values() const
{
    Eigen::VectorXcd v(records.size());
    for(std::size_t i = 0; i < records.size(); ++i)
        v[i] = records[i].value;
    return v;
}

namespace {

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if(!in)
        throw ParseError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch(const json::parse_error& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
}

std::complex<double> parse_value(const json& v, std::size_t record)
{
    if(v.is_number())
        return {v.get<double>(), 0.0};
    if(v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw ParseError("record " + std::to_string(record) +
        ": value must be a number or a [re, im] pair");
}

Rotation parse_rotation(const json& rec, std::size_t record)
{
    const int forms = rec.contains("euler") + rec.contains("quaternion") + rec.contains("matrix");
    if(forms != 1)
        throw ParseError("record " + std::to_string(record) +
            ": exactly one of euler/quaternion/matrix required");

    if(rec.contains("euler")) {
        const json& e = rec["euler"];
        if(!e.is_array() || e.size() != 3)
            throw ParseError("record " + std::to_string(record) +
                ": euler must be a [phi1, theta, phi2] triple");
        return from_euler({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
    }
    if(rec.contains("quaternion")) {
        const json& q = rec["quaternion"];
        if(!q.is_array() || q.size() != 4)
            throw ParseError("record " + std::to_string(record) +
                ": quaternion must be a [w, x, y, z] quadruple");
        Eigen::Quaterniond quat(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
            q[3].get<double>());
        if(std::abs(quat.norm() - 1.0) > 1e-6)
            throw ValidationError("record " + std::to_string(record) +
                ": quaternion norm deviates from 1 by more than 1e-6");
        return Rotation(quat);
    }
    const json& m = rec["matrix"];
    if(!m.is_array() || m.size() != 3)
        throw ParseError("record " + std::to_string(record) + ": matrix must be 3x3");
    Eigen::Matrix3d mat;
    for(int i = 0; i < 3; ++i) {
        if(!m[i].is_array() || m[i].size() != 3)
            throw ParseError("record " + std::to_string(record) + ": matrix must be 3x3");
        for(int j = 0; j < 3; ++j)
            mat(i, j) = m[i][j].get<double>();
    }
    if((mat.transpose() * mat - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-6 ||
        std::abs(mat.determinant() - 1.0) > 1e-6)
        throw ValidationError("record " + std::to_string(record) +
            ": matrix is not a rotation (orthogonality/determinant off by more than 1e-6)");
    return Rotation(mat);
}

} // namespace

Dataset load_dataset(const std::string& path)
{
    const json root = read_json_file(path);
    if(!root.contains("records") || !root["records"].is_array() || root["records"].empty())
        throw ParseError(path + ": expected a nonempty records array");
    Dataset ds;
    const json& records = root["records"];
    for(std::size_t i = 0; i < records.size(); ++i) {
        const json& rec = records[i];
        if(!rec.contains("value"))
            throw ParseError("record " + std::to_string(i) + ": missing value");
        ds.records.push_back({parse_rotation(rec, i), parse_value(rec["value"], i)});
    }
    return ds;
}

std::vector<Rotation> load_points(const std::string& path)
{
    const json root = read_json_file(path);
    if(!root.contains("records") || !root["records"].is_array() || root["records"].empty())
        throw ParseError(path + ": expected a nonempty records array");
    std::vector<Rotation> pts;
    const json& records = root["records"];
    for(std::size_t i = 0; i < records.size(); ++i)
        pts.push_back(parse_rotation(records[i], i));
    return pts;
}

void save_model(const SplineModel& model, const std::string& path)
{
    ordered_json root;
    root["format_version"] = kModelFormatVersion;
    root["m"] = model.order.m();
    root["l0"] = model.order.cpd_order();
    root["b_row_order"] = kModelRowOrderTag;

    ordered_json centers = ordered_json::array();
    for(const Rotation& c : model.centers) {
        const Eigen::Quaterniond& q = c.quaternion();
        centers.push_back({q.w(), q.x(), q.y(), q.z()});
    }
    root["centers"] = std::move(centers);

    ordered_json alpha = ordered_json::array();
    for(Eigen::Index i = 0; i < model.alpha.size(); ++i)
        alpha.push_back({model.alpha[i].real(), model.alpha[i].imag()});
    root["alpha"] = std::move(alpha);

    ordered_json beta = ordered_json::array();
    const auto idx = polynomial_basis_indices(model.order.cpd_order());
    for(std::size_t r = 0; r < idx.size(); ++r) {
        ordered_json entry;
        entry["l"] = idx[r].l;
        entry["iota"] = idx[r].k;
        entry["nu"] = idx[r].m;
        entry["value"] = {model.beta[r].real(), model.beta[r].imag()};
        beta.push_back(std::move(entry));
    }
    root["beta"] = std::move(beta);

    std::ofstream out(path);
    if(!out)
        throw Error("cannot write file: " + path);
    out << root.dump(2) << "\n";
}

SplineModel load_model(const std::string& path)
{
    const json root = read_json_file(path);
    try {
        if(root.at("format_version").get<int>() != kModelFormatVersion)
            throw ValidationError(path + ": unsupported model format version");
        if(root.at("b_row_order").get<std::string>() != kModelRowOrderTag)
            throw ValidationError(path + ": unknown polynomial row-order tag");

        const KernelOrder order(root.at("m").get<int>());
        if(root.at("l0").get<int>() != order.cpd_order())
            throw ValidationError(path + ": l0 inconsistent with m");

        std::vector<Rotation> centers;
        for(const json& q : root.at("centers")) {
            Eigen::Quaterniond quat(q.at(0).get<double>(), q.at(1).get<double>(),
                q.at(2).get<double>(), q.at(3).get<double>());
            if(std::abs(quat.norm() - 1.0) > 1e-6)
                throw ValidationError(path + ": non-unit center quaternion");
            centers.push_back(Rotation(quat));
        }

        const json& ja = root.at("alpha");
        if(ja.size() != centers.size())
            throw ValidationError(path + ": alpha length does not match centers");
        Eigen::VectorXcd alpha(ja.size());
        for(std::size_t i = 0; i < ja.size(); ++i)
            alpha[i] = {ja[i].at(0).get<double>(), ja[i].at(1).get<double>()};

        const auto idx = polynomial_basis_indices(order.cpd_order());
        const json& jb = root.at("beta");
        if(jb.size() != idx.size())
            throw ValidationError(path + ": beta length does not match l0");
        Eigen::VectorXcd beta(jb.size());
        for(std::size_t r = 0; r < jb.size(); ++r) {
            const json& entry = jb[r];
            if(entry.at("l").get<int>() != idx[r].l || entry.at("iota").get<int>() != idx[r].k ||
                entry.at("nu").get<int>() != idx[r].m)
                throw ValidationError(path + ": beta index order violates the row-order tag");
            beta[r] = {entry.at("value").at(0).get<double>(),
                entry.at("value").at(1).get<double>()};
        }
        return {order, std::move(centers), std::move(alpha), std::move(beta)};
    } catch(const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string format_double(double v)
{
    // shortest representation that parses back to the same bits
    return json(v).dump();
}

std::string convergence_table_csv(const ConvergenceTable& table)
{
    std::ostringstream out;
    out << "size,h,rho,sup_error,l2_error\n";
    for(const ConvergenceRow& row : table.rows) {
        out << row.size << ',' << format_double(row.h) << ',' << format_double(row.rho) << ','
            << format_double(row.sup_error) << ',' << format_double(row.l2_error) << '\n';
    }
    out << "# fitted_order_sup," << format_double(table.sup_order) << '\n';
    out << "# fitted_order_l2," << format_double(table.l2_order) << '\n';
    return out.str();
}

std::string convergence_table_json(const ConvergenceTable& table)
{
    ordered_json root;
    ordered_json rows = ordered_json::array();
    for(const ConvergenceRow& row : table.rows) {
        ordered_json r;
        r["size"] = row.size;
        r["h"] = row.h;
        r["rho"] = row.rho;
        r["sup_error"] = row.sup_error;
        r["l2_error"] = row.l2_error;
        rows.push_back(std::move(r));
    }
    root["rows"] = std::move(rows);
    root["fitted_order_sup"] = table.sup_order;
    root["fitted_order_l2"] = table.l2_order;
    return root.dump(2) + "\n";
}

std::string ckc_report_json(const CkcReport& report, int precision, double rho)
{
    ordered_json root;
    root["precision_L"] = precision;
    root["rho"] = rho;
    root["probe_count"] = report.probe_count;
    root["seed"] = report.seed;
    root["max_precision_residual"] = report.max_precision_residual;
    root["max_support_violation"] = report.max_support_violation;
    root["stability_K"] = report.stability_constant;
    root["density_failures"] = report.density_failures;
    root["per_probe_local_counts"] = report.local_counts;
    return root.dump(2) + "\n";
}

std::string ckc_report_csv(const CkcReport& report, int precision, double rho)
{
    std::ostringstream out;
    out << "key,value\n";
    out << "precision_L," << precision << '\n';
    out << "rho," << format_double(rho) << '\n';
    out << "probe_count," << report.probe_count << '\n';
    out << "seed," << report.seed << '\n';
    out << "max_precision_residual," << format_double(report.max_precision_residual) << '\n';
    out << "max_support_violation," << format_double(report.max_support_violation) << '\n';
    out << "stability_K," << format_double(report.stability_constant) << '\n';
    out << "density_failures," << report.density_failures << '\n';
    for(std::size_t i = 0; i < report.local_counts.size(); ++i)
        out << "local_count_" << i << ',' << report.local_counts[i] << '\n';
    return out.str();
}

} // namespace so3fit
