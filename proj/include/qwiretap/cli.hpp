#pragma once

// Command-line surface: subcommand dispatch, schema-validated JSON input,
// and deterministic table or JSON reports. Exit status 0 on success, 2 on
// validation failure (named invariant), 1 on internal numerical failure.

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwiretap/capacity.hpp"
#include "qwiretap/channel.hpp"
#include "qwiretap/dfs.hpp"
#include "qwiretap/json_io.hpp"
#include "qwiretap/secrecy.hpp"

namespace qwiretap::cli {

enum class Command { DfsFind, ChannelInfo, Privacy, CodeVerify, Capacity, DemoDephasing };
enum class OutputFormat { Table, Json };

struct RunConfig {
    Command command = Command::DemoDephasing;
    std::string channel_path;
    std::string ensemble_path;
    std::string code_path;
    std::string out_path;  // empty: stdout
    OutputFormat format = OutputFormat::Table;
    double tol = kDefaultCapacityTol;
    std::size_t max_iter = kDefaultCapacityMaxIter;
    double lambda = 1e-6;
    double mu = 1e-6;
    bool difference_mode = false;
};

// Shortest round-trip decimal, locale independent.
inline std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json load_json(const std::string& path) {
    return jsonio::parse_text(read_file(path), path);
}

inline QuantumChannel load_channel(const std::string& path) {
    return jsonio::channel_from_json(load_json(path));
}

inline void validate(const RunConfig& config) {
    if (config.tol <= 0.0) throw ParseError("--tol must be positive");
    if (config.lambda <= 0.0) throw ParseError("--lambda must be positive");
    if (config.mu <= 0.0) throw ParseError("--mu must be positive");
    if (config.max_iter == 0) throw ParseError("--max-iter must be positive");
}

inline std::string table_of(const json& j, int indent = 0) {
    std::string out;
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out += pad + key + ":\n" + table_of(value, indent + 1);
        } else if (value.is_number_float()) {
            out += pad + key + " = " + fmt(value.get<double>()) + "\n";
        } else {
            out += pad + key + " = " + value.dump() + "\n";
        }
    }
    return out;
}

} // namespace detail

inline json run_dfs_find(const RunConfig& config) {
    const QuantumChannel ch = detail::load_channel(config.channel_path);
    const auto subspaces = find_dfs(SystemOperatorSet::from_channel(ch));
    return jsonio::dfs_to_json(subspaces, ch.dim_in());
}

inline json run_channel_info(const RunConfig& config) {
    const QuantumChannel ch = detail::load_channel(config.channel_path);
    ComplexMatrix completeness(ch.dim_in(), ch.dim_in());
    for (const ComplexMatrix& a : ch.kraus()) completeness += a.adjoint() * a;
    json info{{"label", ch.label()},
              {"dim_in", ch.dim_in()},
              {"kraus_count", ch.kraus().size()},
              {"completeness_residual",
               frobenius_distance(completeness, ComplexMatrix::identity(ch.dim_in()))}};
    const std::size_t joint = ch.dim_in() * ch.kraus().size();
    if (joint <= kMaxDimension) {
        const DilatedChannel d = dilate(ch);
        info["env_dim"] = d.env_dim();
        info["unitary_dim"] = joint;
        info["unitary_residual"] = frobenius_distance(
            d.unitary().adjoint() * d.unitary(), ComplexMatrix::identity(joint));
    }
    return info;
}

inline json run_privacy(const RunConfig& config) {
    const QuantumChannel ch = detail::load_channel(config.channel_path);
    const Ensemble e = jsonio::ensemble_from_json(detail::load_json(config.ensemble_path));
    return jsonio::privacy_to_json(privacy(dilate(ch), e));
}

inline json run_code_verify(const RunConfig& config) {
    const QuantumChannel ch = detail::load_channel(config.channel_path);
    const WiretapCode code = jsonio::wiretap_code_from_json(detail::load_json(config.code_path));
    return jsonio::verdict_to_json(
        verify_wiretap_code(dilate(ch), code, config.lambda, config.mu));
}

inline json run_capacity(const RunConfig& config) {
    const Ensemble e = jsonio::ensemble_from_json(detail::load_json(config.ensemble_path));
    if (config.difference_mode) {
        if (config.channel_path.empty())
            throw ParseError("capacity --difference needs --channel");
        const QuantumChannel ch = detail::load_channel(config.channel_path);
        return jsonio::capacity_to_json(
            secrecy_rate_sweep(dilate(ch), e.states(), config.tol, config.max_iter));
    }
    return jsonio::capacity_to_json(maximize_holevo(e.states(), config.tol, config.max_iter));
}

// Full walkthrough of the two-qubit collective-dephasing scenario: find the
// dim-2 block, code over it, verify the wiretap criteria, and maximize the
// legitimate receiver's Holevo quantity.
inline json run_demo(const RunConfig& config) {
    const QuantumChannel ch = collective_dephasing(2);
    const DilatedChannel d = dilate(ch);
    const auto subspaces = find_dfs(SystemOperatorSet::from_channel(ch));
    if (subspaces.empty() || subspaces.front().dim() < 2)
        throw NumericalError("demo: expected a dim-2 block from the dephasing channel");
    const DfsSubspace& block = subspaces.front();

    const Qeac code = build_qeac(block, 2);
    const WiretapVerdict verdict = verify_wiretap_code(d, code, config.lambda, config.mu);

    std::vector<DensityMatrix> words;
    for (const auto& w : code.codewords) words.push_back(DensityMatrix::pure(w));
    const PrivacyReport priv = privacy(d, Ensemble::uniform(std::move(words)));
    const CapacityResult cap = secrecy_capacity_dfs(d, block, config.tol, config.max_iter);

    json dims = json::array();
    for (const auto& s : subspaces) dims.push_back(s.dim());
    return json{{"channel", json{{"label", ch.label()},
                                 {"dim_in", ch.dim_in()},
                                 {"kraus_count", ch.kraus().size()},
                                 {"env_dim", d.env_dim()}}},
                {"dfs_dims", std::move(dims)},
                {"selected_block", json{{"dim", block.dim()},
                                        {"basis", jsonio::matrix_to_json(block.basis())}}},
                {"qeac", json{{"messages", code.codewords.size()},
                              {"bits", code.bits},
                              {"rate_per_letter", code.rate}}},
                {"verdict", jsonio::verdict_to_json(verdict)},
                {"privacy", jsonio::privacy_to_json(priv)},
                {"capacity", jsonio::capacity_to_json(cap)}};
}

inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        detail::validate(config);
        json report;
        switch (config.command) {
            case Command::DfsFind: report = run_dfs_find(config); break;
            case Command::ChannelInfo: report = run_channel_info(config); break;
            case Command::Privacy: report = run_privacy(config); break;
            case Command::CodeVerify: report = run_code_verify(config); break;
            case Command::Capacity: report = run_capacity(config); break;
            case Command::DemoDephasing: report = run_demo(config); break;
        }
        std::string text = config.format == OutputFormat::Json ? report.dump(2) + "\n"
                                                               : detail::table_of(report);
        if (config.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(config.out_path, std::ios::binary);
            if (!f) throw ParseError(config.out_path + ": cannot open for writing");
            f << text;
        }
        return 0;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

// Parses argv-style arguments (program name excluded) and runs the command.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    std::string format = "table";

    CLI::App app{"decoherence-free-subspace wiretap toolkit"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", config.out_path, "write the report to a file instead of stdout");
        cmd->add_option("--format", format, "output format: table or json")
            ->check(CLI::IsMember({"table", "json"}));
    };

    auto* dfs_find = app.add_subcommand("dfs-find", "find decoherence-free blocks of a channel");
    dfs_find->add_option("--channel", config.channel_path, "channel JSON file")->required();
    add_common(dfs_find);

    auto* channel_info = app.add_subcommand("channel-info", "validate and summarize a channel");
    channel_info->add_option("--channel", config.channel_path, "channel JSON file")->required();
    add_common(channel_info);

    auto* privacy_cmd = app.add_subcommand("privacy", "Holevo quantities and privacy of an ensemble");
    privacy_cmd->add_option("--channel", config.channel_path, "channel JSON file")->required();
    privacy_cmd->add_option("--ensemble", config.ensemble_path, "ensemble JSON file")->required();
    add_common(privacy_cmd);

    auto* code_verify = app.add_subcommand("code-verify", "check the wiretap-code criteria");
    code_verify->add_option("--channel", config.channel_path, "channel JSON file")->required();
    code_verify->add_option("--code", config.code_path, "code JSON file")->required();
    code_verify->add_option("--lambda", config.lambda, "decoding error bound");
    code_verify->add_option("--mu", config.mu, "leakage bound, bits per letter");
    add_common(code_verify);

    auto* capacity_cmd = app.add_subcommand("capacity", "maximize Holevo quantity over priors");
    capacity_cmd->add_option("--ensemble", config.ensemble_path, "signal states JSON file")
        ->required();
    capacity_cmd->add_option("--channel", config.channel_path,
                             "channel JSON file (needed with --difference)");
    capacity_cmd->add_flag("--difference", config.difference_mode,
                           "maximize chi_Bob - chi_Eve instead of chi_Bob alone");
    capacity_cmd->add_option("--tol", config.tol, "optimality-gap tolerance");
    capacity_cmd->add_option("--max-iter", config.max_iter, "iteration cap");
    add_common(capacity_cmd);

    auto* demo = app.add_subcommand("demo-dephasing",
                                    "two-qubit collective-dephasing walkthrough");
    demo->add_option("--lambda", config.lambda, "decoding error bound");
    demo->add_option("--mu", config.mu, "leakage bound, bits per letter");
    demo->add_option("--tol", config.tol, "capacity tolerance");
    demo->add_option("--max-iter", config.max_iter, "iteration cap");
    add_common(demo);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (dfs_find->parsed()) config.command = Command::DfsFind;
    else if (channel_info->parsed()) config.command = Command::ChannelInfo;
    else if (privacy_cmd->parsed()) config.command = Command::Privacy;
    else if (code_verify->parsed()) config.command = Command::CodeVerify;
    else if (capacity_cmd->parsed()) config.command = Command::Capacity;
    else config.command = Command::DemoDephasing;
    config.format = format == "json" ? OutputFormat::Json : OutputFormat::Table;

    return run(config, out, err);
}

} // namespace qwiretap::cli
