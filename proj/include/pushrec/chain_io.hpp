#pragma once

#include <string>

#include "pushrec/dynamics.hpp"
#include "pushrec/trial_io.hpp"

namespace pushrec {

/// Chain parameter file: `key = value` lines, '#' comments. Keys are
/// `gravity` and `link.<i>.mass|length|com_offset|inertia` with 1-based i.
LinkChain<double> parse_chain(const std::string& text, const std::string& name = "<input>");
LinkChain<double> parse_chain_file(const std::string& path);
std::string serialize_chain(const LinkChain<double>& chain);
void write_chain_file(const std::string& path, const LinkChain<double>& chain);

/// Trajectory as a generic columns file: t,theta_1..n,thetadot_1..n,tau_1..n.
ColumnsFile trajectory_to_columns(const JointTrajectory<double>& traj);

}  // namespace pushrec
