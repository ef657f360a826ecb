// idrkit command line: manifest-driven interdisciplinarity and performance
// analytics over bibliographic corpora.
//
// Exit codes: 0 success, 1 partial (some units failed), 2 invalid manifest.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idrkit/idrkit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitInvalid = 2;

struct CommonArgs {
    std::string manifest;
    std::string unit;
    std::string facet;
    std::string out;
    std::vector<std::string> params;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_unit_facet) {
    cmd->add_option("--manifest", args.manifest, "run manifest (JSON)")->required();
    cmd->add_option("--out", args.out, "override the manifest's output directory");
    cmd->add_option("--param", args.params, "override a parameter, key=value (repeatable)");
    if (with_unit_facet) {
        cmd->add_option("--unit", args.unit, "restrict to one unit");
        cmd->add_option("--facet", args.facet, "restrict to one facet (publications|references|citations)");
    }
}

idr::RunManifest load_manifest(const CommonArgs& args) {
    idr::RunManifest m = idr::RunManifest::load(args.manifest);
    if (!args.out.empty()) m.output_dir = args.out;
    for (const auto& p : args.params) {
        auto eq = p.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--param expects key=value, got '" + p + "'");
        m.apply_param(p.substr(0, eq), p.substr(eq + 1));
    }
    return m;
}

std::optional<idr::Facet> parse_facet(const std::string& name) {
    if (name.empty()) return std::nullopt;
    if (name == "publications") return idr::Facet::publications;
    if (name == "references") return idr::Facet::references;
    if (name == "citations") return idr::Facet::citations;
    throw std::runtime_error("unknown facet '" + name + "'");
}

int report_outcome(const idr::RunOutcome& outcome) {
    if (!outcome.stdout_text.empty()) std::fputs(outcome.stdout_text.c_str(), stdout);
    for (const auto& msg : outcome.messages) idr::log_error(msg);
    if (!outcome.clean()) {
        std::fprintf(stderr, "%zu unit(s) failed\n", outcome.failed_units.size());
        return kExitPartial;
    }
    return kExitOk;
}

int run_validate(const CommonArgs& args) {
    idr::RunManifest m = load_manifest(args);
    std::vector<idr::Diagnostic> diags = idr::validate_manifest(m);
    for (const auto& d : diags)
        std::fprintf(stderr, "%s: %s%s%s\n", d.severity == idr::Severity::error ? "error" : "warning",
                     d.file.c_str(), d.file.empty() ? "" : ": ", d.message.c_str());
    std::fprintf(stdout, "%zu diagnostic(s)\n", diags.size());
    return idr::has_errors(diags) ? kExitInvalid : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interdisciplinarity and research-performance indicators from bibliographic corpora"};
    app.require_subcommand(1);

    CommonArgs validate_args, indicators_args, performance_args, overlay_args, fund_args, all_args;
    CLI::App* cmd_validate = app.add_subcommand("validate", "check manifest and input files");
    add_common(cmd_validate, validate_args, false);
    CLI::App* cmd_indicators =
        app.add_subcommand("indicators", "diversity, coherence and intermediation reports");
    add_common(cmd_indicators, indicators_args, true);
    CLI::App* cmd_performance = app.add_subcommand("performance", "rating, citation and IF indicators");
    add_common(cmd_performance, performance_args, false);
    cmd_performance->add_option("--unit", performance_args.unit, "restrict to one unit");
    CLI::App* cmd_overlay = app.add_subcommand("overlay", "overlay-map and journal-map exports");
    add_common(cmd_overlay, overlay_args, true);
    CLI::App* cmd_fund = app.add_subcommand("fund", "funding allocation from rating histograms");
    add_common(cmd_fund, fund_args, false);
    CLI::App* cmd_all = app.add_subcommand("all", "run every analysis");
    add_common(cmd_all, all_args, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_validate->parsed()) return run_validate(validate_args);

        const CommonArgs& args = cmd_indicators->parsed()    ? indicators_args
                                 : cmd_performance->parsed() ? performance_args
                                 : cmd_overlay->parsed()     ? overlay_args
                                 : cmd_fund->parsed()        ? fund_args
                                                             : all_args;
        idr::RunManifest manifest = load_manifest(args);
        std::vector<idr::Diagnostic> diags = idr::validate_manifest(manifest);
        if (idr::has_errors(diags)) {
            for (const auto& d : diags)
                if (d.severity == idr::Severity::error)
                    std::fprintf(stderr, "error: %s%s%s\n", d.file.c_str(), d.file.empty() ? "" : ": ",
                                 d.message.c_str());
            return kExitInvalid;
        }
        idr::Context ctx = idr::load_context(manifest);
        std::optional<std::string> unit =
            args.unit.empty() ? std::nullopt : std::optional<std::string>(args.unit);
        std::optional<idr::Facet> facet = parse_facet(args.facet);

        idr::RunOutcome outcome;
        if (cmd_indicators->parsed()) outcome = idr::run_indicators(manifest, ctx, unit, facet);
        else if (cmd_performance->parsed()) outcome = idr::run_performance(manifest, ctx, unit);
        else if (cmd_overlay->parsed()) outcome = idr::run_overlay(manifest, ctx, unit, facet);
        else if (cmd_fund->parsed()) outcome = idr::run_fund(manifest, ctx);
        else outcome = idr::run_all(manifest, ctx);
        return report_outcome(outcome);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }
}
