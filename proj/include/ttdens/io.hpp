#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <Eigen/Core>

#include "ttdens/densities.hpp"
#include "ttdens/grid.hpp"
#include "ttdens/tensor_train.hpp"

namespace ttdens {

// JSON schemas:
//   Grid:        {"axes":[[...],...]}
//   DenseTensor: {"shape":[...],"values":[...]}       (values row-major)
//   TensorTrain: {"shape":[...],"ranks":[...],"cores":[[...],...]}
//                (each core flat row-major over (left, n, right))
nlohmann::json to_json(const Grid& g);
nlohmann::json to_json(const DenseTensor& t);
nlohmann::json to_json(const TensorTrain& tt);
nlohmann::json to_json(const GaussianSpec& s);
nlohmann::json to_json(const RadarSpec& s);

Grid grid_from_json(const nlohmann::json& j);
DenseTensor dense_tensor_from_json(const nlohmann::json& j);
TensorTrain tensor_train_from_json(const nlohmann::json& j);
GaussianSpec gaussian_spec_from_json(const nlohmann::json& j);
RadarSpec radar_spec_from_json(const nlohmann::json& j);

/// RFC-4180 CSV writer emitting numbers with 17 significant digits.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void comment(const std::string& line);  // "# ..." header line
    void row(const std::vector<std::string>& fields);
    void numeric_row(const std::vector<double>& values);
    void matrix(const Eigen::MatrixXd& m);  // one CSV row per matrix row

    static std::string format(double v);

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace ttdens
