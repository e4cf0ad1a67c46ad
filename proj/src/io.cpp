#include "ttdens/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ttdens {

using nlohmann::json;

json to_json(const Grid& g) { return json{{"axes", g.axes}}; }

json to_json(const DenseTensor& t) {
    return json{{"shape", t.shape}, {"values", t.values}};
}

json to_json(const TensorTrain& tt) {
    json cores = json::array();
    for (const auto& c : tt.cores) {
        std::vector<double> flat(c.data.data(), c.data.data() + c.data.size());
        cores.push_back(flat);
    }
    return json{{"shape", tt.shape()}, {"ranks", tt.ranks()}, {"cores", cores}};
}

json to_json(const GaussianSpec& s) {
    std::vector<std::vector<double>> cov(static_cast<std::size_t>(s.covariance.rows()));
    for (Eigen::Index i = 0; i < s.covariance.rows(); ++i)
        cov[static_cast<std::size_t>(i)].assign(
            s.covariance.row(i).begin(), s.covariance.row(i).end());
    return json{{"mean", std::vector<double>(s.mean.begin(), s.mean.end())},
                {"covariance", cov}};
}

json to_json(const RadarSpec& s) {
    return json{{"mu_r", s.mu_r}, {"sigma_r", s.sigma_r},
                {"mu_a", s.mu_a}, {"sigma_a", s.sigma_a}};
}

Grid grid_from_json(const json& j) {
    Grid g;
    g.axes = j.at("axes").get<std::vector<std::vector<double>>>();
    g.validate();
    return g;
}

DenseTensor dense_tensor_from_json(const json& j) {
    DenseTensor t;
    t.shape = j.at("shape").get<std::vector<std::size_t>>();
    t.values = j.at("values").get<std::vector<double>>();
    t.validate();
    return t;
}

TensorTrain tensor_train_from_json(const json& j) {
    const auto shape = j.at("shape").get<std::vector<std::size_t>>();
    const auto ranks = j.at("ranks").get<std::vector<Eigen::Index>>();
    const auto cores = j.at("cores").get<std::vector<std::vector<double>>>();
    if (ranks.size() != shape.size() + 1 || cores.size() != shape.size())
        throw std::invalid_argument("TensorTrain JSON: inconsistent sizes");
    TensorTrain tt;
    tt.cores.resize(shape.size());
    for (std::size_t k = 0; k < shape.size(); ++k) {
        auto& c = tt.cores[k];
        c.left = ranks[k];
        c.n = static_cast<Eigen::Index>(shape[k]);
        c.right = ranks[k + 1];
        if (static_cast<Eigen::Index>(cores[k].size()) != c.left * c.n * c.right)
            throw std::invalid_argument("TensorTrain JSON: core size mismatch");
        c.data = Eigen::Map<const RowMatrixXd>(cores[k].data(), c.left * c.n, c.right);
    }
    tt.validate();
    return tt;
}

GaussianSpec gaussian_spec_from_json(const json& j) {
    const auto mean = j.at("mean").get<std::vector<double>>();
    const auto cov = j.at("covariance").get<std::vector<std::vector<double>>>();
    GaussianSpec s;
    s.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(),
                                               static_cast<Eigen::Index>(mean.size()));
    s.covariance.resize(static_cast<Eigen::Index>(cov.size()),
                        static_cast<Eigen::Index>(cov.size()));
    for (std::size_t i = 0; i < cov.size(); ++i) {
        if (cov[i].size() != cov.size())
            throw std::invalid_argument("GaussianSpec JSON: covariance not square");
        for (std::size_t k = 0; k < cov.size(); ++k)
            s.covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                cov[i][k];
    }
    s.validate();
    return s;
}

RadarSpec radar_spec_from_json(const json& j) {
    RadarSpec s;
    s.mu_r = j.at("mu_r").get<double>();
    s.sigma_r = j.at("sigma_r").get<double>();
    s.mu_a = j.at("mu_a").get<double>();
    s.sigma_a = j.at("sigma_a").get<double>();
    s.validate();
    return s;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::filesystem::path& path) : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out)
        throw std::runtime_error("CsvWriter: cannot open " + path.string());
}

CsvWriter::~CsvWriter() { delete impl_; }

std::string CsvWriter::format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::comment(const std::string& line) { impl_->out << "# " << line << "\r\n"; }

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) impl_->out << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            impl_->out << '"';
            for (char ch : f) {
                if (ch == '"') impl_->out << '"';
                impl_->out << ch;
            }
            impl_->out << '"';
        } else {
            impl_->out << f;
        }
    }
    impl_->out << "\r\n";
}

void CsvWriter::numeric_row(const std::vector<double>& values) {
    std::vector<std::string> fields;
    fields.reserve(values.size());
    for (double v : values) fields.push_back(format(v));
    row(fields);
}

void CsvWriter::matrix(const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<double> vals(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            vals[static_cast<std::size_t>(c)] = m(r, c);
        numeric_row(vals);
    }
}

}  // namespace ttdens
