#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "pushrec/convert.hpp"
#include "pushrec/types.hpp"

namespace pushrec {

inline constexpr const char* kSubjectHeader = "# subject,height_m,weight_kg,sex,handedness,age";
inline constexpr const char* kConditionHeader = "# condition,eyes,lunging,stance";
inline constexpr const char* kRawColumnsHeader =
    "t,rhip,lhip,rknee,lknee,rankle,lankle,force,ax,ay,az,gx,gy,gz";
inline constexpr const char* kConvertedColumnsHeader =
    "t,rhip_deg,lhip_deg,rknee_deg,lknee_deg,rankle_deg,lankle_deg,force_N,"
    "ax_g,ay_g,az_g,gx_dps,gy_dps,gz_dps";

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

/// Parse a raw trial file (digital counts). `name` labels diagnostics.
RawTrial parse_trial(const std::string& text, const std::string& name = "<input>");
RawTrial parse_trial_file(const std::string& path);

/// Canonical text form; parse_trial(serialize_trial(t)) == t.
std::string serialize_trial(const RawTrial& trial);
void write_trial_file(const std::string& path, const RawTrial& trial);

/// Converted-units trial file: same preamble, unit-suffixed data header.
std::string serialize_converted(const ConvertedTrial& trial);
void write_converted_file(const std::string& path, const ConvertedTrial& trial);
ConvertedTrial parse_converted(const std::string& text, const std::string& name = "<input>");
ConvertedTrial parse_converted_file(const std::string& path);

/// Generic numeric CSV with an optional '#'-preamble (comment lines and
/// the metadata value lines that follow them are passed through verbatim).
struct ColumnsFile {
    std::vector<std::string> preamble;  // raw lines before the data header
    std::vector<std::string> header;    // column names; first must be "t"
    Eigen::MatrixXd data;               // one row per sample

    Eigen::VectorXd column(int i) const { return data.col(i); }
};

ColumnsFile read_columns(const std::string& text, const std::string& name = "<input>");
ColumnsFile read_columns_file(const std::string& path);
std::string serialize_columns(const ColumnsFile& f);
void write_columns_file(const std::string& path, const ColumnsFile& f);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pushrec
