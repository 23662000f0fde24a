// tensvd command line tool: compress / decompress / info / bench.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tensvd/bench.hpp"
#include "tensvd/codec.hpp"
#include "tensvd/hosvd.hpp"
#include "tensvd/media_io.hpp"
#include "tensvd/metrics.hpp"
#include "tensvd/tensvd.hpp"
#include "tensvd/threads.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string shape_string(const tensvd::Shape& dims) {
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) out += "x";
        out += std::to_string(dims[i]);
    }
    return out;
}

tensvd::DenseTensor load_media(const std::string& path, const std::string& pattern) {
    std::vector<std::string> warnings;
    tensvd::DenseTensor t = fs::is_directory(path)
                                ? tensvd::load_frames(path, pattern, &warnings)
                                : tensvd::load_image(path, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    return t;
}

void save_media(const tensvd::DenseTensor& t, const std::string& path) {
    if (t.order() == 4)
        tensvd::save_frames(t, path);
    else
        tensvd::save_image(t, path);
}

double selected_energy(const tensvd::SparseCore& sc) {
    double sum = 0.0;
    for (double v : sc.values) sum += v * v;
    return sum;
}

void emit(const std::string& text, const json& object, const std::string& json_path) {
    std::cout << text;
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::trunc);
        if (!out) throw tensvd::IoError("cannot open " + json_path + " for writing");
        out << object.dump(2) << "\n";
    }
}

json report_to_json(const tensvd::QualityReport& r) {
    return json{{"mse", r.mse},
                {"err", r.err},
                {"psnr_db", r.psnr_db},
                {"cr_stored_fraction", r.cr_stored_fraction},
                {"cr_space_savings", r.cr_space_savings},
                {"elapsed_seconds", r.elapsed_seconds}};
}

tensvd::QualityReport make_report(const tensvd::DenseTensor& original,
                                  const tensvd::DenseTensor& reconstructed,
                                  std::int64_t stored_count, double elapsed,
                                  bool psnr_as_printed) {
    tensvd::QualityReport report;
    report.mse = tensvd::mse(original, reconstructed);
    report.err = tensvd::relative_error(original, reconstructed);
    report.psnr_db = tensvd::psnr(original, reconstructed, psnr_as_printed);
    std::tie(report.cr_stored_fraction, report.cr_space_savings) =
        tensvd::compression_ratio(stored_count, original.size());
    report.elapsed_seconds = elapsed;
    return report;
}

struct CompressOptions {
    std::string input;
    std::string output;
    std::optional<double> eps;
    std::optional<double> cr;
    std::optional<int> order;
    std::string algorithm = "tensvd";
    std::vector<std::int64_t> ranks;
    bool direct_svd = false;
    bool psnr_as_printed = false;
    std::string json_path;
    std::string pattern = "*.png";
};

int run_compress(const CompressOptions& opt) {
    const tensvd::DenseTensor original = load_media(opt.input, opt.pattern);

    std::string text;
    json object;

    if (opt.algorithm == "tensvd") {
        if (opt.eps.has_value() == opt.cr.has_value())
            throw tensvd::Error("tensvd compression needs exactly one of --eps or --cr");
        const auto target = opt.eps ? tensvd::CompressionTarget::epsilon(*opt.eps)
                                    : tensvd::CompressionTarget::stored_fraction(*opt.cr);

        auto [compressed, seconds] =
            tensvd::timed([&] { return tensvd::compress(original, target, opt.order); });
        if (compressed.plan.degenerate())
            std::cerr << "warning: element count is prime, order-1 fallback plan in use\n";

        const tensvd::DenseTensor reconstructed = tensvd::decompress(compressed);
        const tensvd::QualityReport report = make_report(
            original, reconstructed, compressed.stored_count, seconds, opt.psnr_as_printed);

        const std::vector<std::uint8_t> bytes = tensvd::encode(compressed);
        tensvd::write_bytes(opt.output, bytes);

        const double sel = selected_energy(compressed.sparse_core);
        std::ostringstream extra;
        extra.precision(17);
        extra << "algorithm=tensvd\n"
              << "original_dims=" << shape_string(compressed.plan.original_dims) << "\n"
              << "reshaped_dims=" << shape_string(compressed.plan.reshaped_dims) << "\n"
              << "entry_count=" << compressed.sparse_core.entry_count() << "\n"
              << "stored_count=" << compressed.stored_count << "\n"
              << "original_count=" << original.size() << "\n"
              << "selected_energy=" << sel << "\n"
              << "total_energy=" << compressed.total_energy << "\n"
              << "file_bytes=" << bytes.size() << "\n";
        text = extra.str() + report.to_text();

        object = report_to_json(report);
        object["algorithm"] = "tensvd";
        object["original_dims"] = compressed.plan.original_dims;
        object["reshaped_dims"] = compressed.plan.reshaped_dims;
        object["entry_count"] = compressed.sparse_core.entry_count();
        object["stored_count"] = compressed.stored_count;
        object["original_count"] = original.size();
        object["selected_energy"] = sel;
        object["total_energy"] = compressed.total_energy;
        object["file_bytes"] = bytes.size();
    } else if (opt.algorithm == "thosvd") {
        if (opt.eps)
            throw tensvd::Error("--eps applies to the tensvd algorithm only");
        std::vector<std::int64_t> ranks = opt.ranks;
        if (ranks.empty()) {
            if (!opt.cr) throw tensvd::Error("thosvd needs --ranks (or --cr to derive them)");
            ranks = tensvd::ranks_for_stored_fraction(original.dims(), *opt.cr);
        }
        const auto route = opt.direct_svd ? tensvd::SvdRoute::Direct : tensvd::SvdRoute::Gram;

        auto [factors, seconds] =
            tensvd::timed([&] { return tensvd::t_hosvd(original, ranks, route); });

        const tensvd::DenseTensor reconstructed = tensvd::reconstruct(factors);
        const std::int64_t stored = tensvd::hosvd_storage_cost(original.dims(), ranks);
        const tensvd::QualityReport report =
            make_report(original, reconstructed, stored, seconds, opt.psnr_as_printed);

        const std::vector<std::uint8_t> bytes = tensvd::encode_tucker(factors, original.dims());
        tensvd::write_bytes(opt.output, bytes);

        std::ostringstream extra;
        extra << "algorithm=thosvd\n"
              << "original_dims=" << shape_string(original.dims()) << "\n"
              << "ranks=" << shape_string(ranks) << "\n"
              << "stored_count=" << stored << "\n"
              << "original_count=" << original.size() << "\n"
              << "file_bytes=" << bytes.size() << "\n";
        text = extra.str() + report.to_text();

        object = report_to_json(report);
        object["algorithm"] = "thosvd";
        object["original_dims"] = original.dims();
        object["ranks"] = ranks;
        object["stored_count"] = stored;
        object["original_count"] = original.size();
        object["file_bytes"] = bytes.size();
    } else {
        throw tensvd::Error("unknown algorithm '" + opt.algorithm + "'");
    }

    emit(text, object, opt.json_path);
    return 0;
}

struct DecompressOptions {
    std::string input;
    std::string output;
    std::string ref;
    std::string pattern = "*.png";
    bool psnr_as_printed = false;
    std::string json_path;
};

int run_decompress(const DecompressOptions& opt) {
    const std::vector<std::uint8_t> bytes = tensvd::read_bytes(opt.input);

    tensvd::DenseTensor reconstructed;
    std::int64_t stored_count = 0;
    double seconds = 0.0;
    if (tensvd::sniff_container(bytes) == tensvd::ContainerKind::TenSvd) {
        const tensvd::CompressedTensor compressed = tensvd::decode(bytes);
        stored_count = compressed.stored_count;
        std::tie(reconstructed, seconds) =
            tensvd::timed([&] { return tensvd::decompress(compressed); });
    } else {
        const tensvd::TuckerFile file = tensvd::decode_tucker(bytes);
        tensvd::Shape ranks = file.factors.core.dims();
        stored_count = tensvd::hosvd_storage_cost(file.original_dims, ranks);
        std::tie(reconstructed, seconds) =
            tensvd::timed([&] { return tensvd::reconstruct(file.factors); });
    }

    save_media(reconstructed, opt.output);

    std::ostringstream extra;
    extra << "input=" << opt.input << "\n"
          << "output=" << opt.output << "\n"
          << "dims=" << shape_string(reconstructed.dims()) << "\n"
          << "stored_count=" << stored_count << "\n";
    json object{{"input", opt.input},
                {"output", opt.output},
                {"dims", reconstructed.dims()},
                {"stored_count", stored_count}};

    std::string text = extra.str();
    if (!opt.ref.empty()) {
        const tensvd::DenseTensor reference = load_media(opt.ref, opt.pattern);
        const tensvd::QualityReport report =
            make_report(reference, reconstructed, stored_count, seconds, opt.psnr_as_printed);
        text += report.to_text();
        object.update(report_to_json(report));
    }

    emit(text, object, opt.json_path);
    return 0;
}

int run_info(const std::string& path, const std::string& json_path) {
    const std::vector<std::uint8_t> bytes = tensvd::read_bytes(path);

    std::ostringstream text;
    json object;
    if (tensvd::sniff_container(bytes) == tensvd::ContainerKind::TenSvd) {
        const tensvd::CompressedTensor c = tensvd::decode(bytes);
        const auto [fraction, savings] = tensvd::compression_ratio(
            c.stored_count, tensvd::element_count(c.plan.original_dims));
        text << "container=tsvd\n"
             << "version=1\n"
             << "original_dims=" << shape_string(c.plan.original_dims) << "\n"
             << "reshaped_dims=" << shape_string(c.plan.reshaped_dims) << "\n"
             << "entry_count=" << c.sparse_core.entry_count() << "\n"
             << "stored_count=" << c.stored_count << "\n"
             << "stored_fraction=" << fraction << "\n"
             << "space_savings=" << savings << "\n"
             << "total_energy=" << c.total_energy << "\n"
             << "file_bytes=" << bytes.size() << "\n";
        object = json{{"container", "tsvd"},
                      {"version", 1},
                      {"original_dims", c.plan.original_dims},
                      {"reshaped_dims", c.plan.reshaped_dims},
                      {"entry_count", c.sparse_core.entry_count()},
                      {"stored_count", c.stored_count},
                      {"stored_fraction", fraction},
                      {"space_savings", savings},
                      {"total_energy", c.total_energy},
                      {"file_bytes", bytes.size()}};
    } else {
        const tensvd::TuckerFile file = tensvd::decode_tucker(bytes);
        const tensvd::Shape ranks = file.factors.core.dims();
        const std::int64_t stored = tensvd::hosvd_storage_cost(file.original_dims, ranks);
        const auto [fraction, savings] =
            tensvd::compression_ratio(stored, tensvd::element_count(file.original_dims));
        text << "container=thsv\n"
             << "original_dims=" << shape_string(file.original_dims) << "\n"
             << "ranks=" << shape_string(ranks) << "\n"
             << "stored_count=" << stored << "\n"
             << "stored_fraction=" << fraction << "\n"
             << "space_savings=" << savings << "\n"
             << "file_bytes=" << bytes.size() << "\n";
        object = json{{"container", "thsv"},
                      {"original_dims", file.original_dims},
                      {"ranks", ranks},
                      {"stored_count", stored},
                      {"stored_fraction", fraction},
                      {"space_savings", savings},
                      {"file_bytes", bytes.size()}};
    }

    emit(text.str(), object, json_path);
    return 0;
}

struct BenchOptions {
    std::vector<std::string> scenarios;
    int reps = 5;
    std::uint64_t seed = 42;
    double cr = 0.1;
    std::vector<std::int64_t> ranks;
    bool direct_svd = false;
    std::string json_path;
};

void print_stats_row(const std::string& label, const tensvd::SummaryStats& s) {
    std::printf("%-14s %9.3f %9.3f %9.3f %9.3f %9.3f %9.3f\n", label.c_str(), s.min, s.lq,
                s.mean, s.median, s.uq, s.max);
}

int run_bench(const BenchOptions& opt) {
    std::vector<tensvd::Scenario> scenarios;
    if (opt.scenarios.empty()) {
        // Desk-scale default set; the larger standards run only when asked for.
        scenarios.push_back(tensvd::resolve_scenario("hd"));
        scenarios.push_back(tensvd::resolve_scenario("fullhd"));
    } else {
        for (const std::string& s : opt.scenarios) scenarios.push_back(tensvd::resolve_scenario(s));
    }
    const auto route = opt.direct_svd ? tensvd::SvdRoute::Direct : tensvd::SvdRoute::Gram;

    json all = json::array();
    std::printf("%-14s %9s %9s %9s %9s %9s %9s\n", "scenario", "min", "lq", "mean", "median",
                "uq", "max");
    for (const tensvd::Scenario& scenario : scenarios) {
        const tensvd::BenchResult r =
            tensvd::run_benchmark(scenario, opt.reps, opt.seed, opt.cr, opt.ranks, route);
        print_stats_row(scenario.label + " (t)", r.tensvd_stats);
        print_stats_row(scenario.label + " (h)", r.hosvd_stats);
        std::printf("%-14s ranks=%s stored h=%" PRId64 " t=%" PRId64
                    " median time ratio (h/t)=%.2f\n",
                    scenario.label.c_str(), shape_string(r.hosvd_ranks).c_str(), r.hosvd_stored,
                    r.tensvd_stored, r.median_time_ratio);

        json row{{"scenario", scenario.name},
                 {"label", scenario.label},
                 {"dims", scenario.dims},
                 {"reps", r.reps},
                 {"seed", r.seed},
                 {"hosvd_ranks", r.hosvd_ranks},
                 {"hosvd_stored", r.hosvd_stored},
                 {"tensvd_stored", r.tensvd_stored},
                 {"tensvd_seconds", r.tensvd_seconds},
                 {"hosvd_seconds", r.hosvd_seconds},
                 {"median_time_ratio", r.median_time_ratio}};
        auto stats_json = [](const tensvd::SummaryStats& s) {
            return json{{"min", s.min}, {"lq", s.lq},         {"mean", s.mean},
                        {"median", s.median}, {"uq", s.uq},   {"max", s.max}};
        };
        row["tensvd_stats"] = stats_json(r.tensvd_stats);
        row["hosvd_stats"] = stats_json(r.hosvd_stats);
        all.push_back(std::move(row));
    }

    if (!opt.json_path.empty()) {
        std::ofstream out(opt.json_path, std::ios::trunc);
        if (!out) throw tensvd::IoError("cannot open " + opt.json_path + " for writing");
        out << all.dump(2) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    tensvd::configure_threads_from_env();

    CLI::App app{"Lossy tensor compression: balanced reshape + Tucker factors + sparse core"};
    app.require_subcommand(1);

    CompressOptions copt;
    CLI::App* compress = app.add_subcommand("compress", "Compress an image or frame directory");
    compress->add_option("input", copt.input, "Input image (.png/.ppm) or frame directory")
        ->required();
    compress->add_option("output", copt.output, "Output container path")->required();
    auto* eps_opt = compress->add_option("--eps", copt.eps, "Relative error budget in (0,1)");
    auto* cr_opt =
        compress->add_option("--cr", copt.cr, "Stored-fraction budget in (0,1)");
    eps_opt->excludes(cr_opt);
    cr_opt->excludes(eps_opt);
    compress->add_option("--order", copt.order, "Reshaped tensor order");
    compress->add_option("--algorithm", copt.algorithm, "tensvd (default) or thosvd")
        ->check(CLI::IsMember({"tensvd", "thosvd"}));
    compress->add_option("--ranks", copt.ranks, "Truncation ranks for thosvd (comma separated)")
        ->delimiter(',');
    compress->add_flag("--direct-svd", copt.direct_svd,
                       "Use a direct SVD of each unfolding for thosvd");
    compress->add_flag("--psnr-as-printed", copt.psnr_as_printed,
                       "PSNR with sqrt(MSE) in the denominator");
    compress->add_option("--json", copt.json_path, "Write the report as JSON to this path");
    compress->add_option("--pattern", copt.pattern, "Frame filename glob (directories)");

    DecompressOptions dopt;
    CLI::App* decompress = app.add_subcommand("decompress", "Reconstruct media from a container");
    decompress->add_option("input", dopt.input, "Compressed container path")->required();
    decompress->add_option("output", dopt.output, "Output image path or frame directory")
        ->required();
    decompress->add_option("--ref", dopt.ref, "Reference media for a quality report");
    decompress->add_option("--pattern", dopt.pattern, "Frame filename glob for --ref");
    decompress->add_flag("--psnr-as-printed", dopt.psnr_as_printed,
                         "PSNR with sqrt(MSE) in the denominator");
    decompress->add_option("--json", dopt.json_path, "Write the report as JSON to this path");

    std::string info_path;
    std::string info_json;
    CLI::App* info = app.add_subcommand("info", "Print container header and accounting");
    info->add_option("file", info_path, "Compressed container path")->required();
    info->add_option("--json", info_json, "Write the fields as JSON to this path");

    BenchOptions bopt;
    CLI::App* bench = app.add_subcommand("bench", "Timing comparison on uniform random tensors");
    bench->add_option("--scenario", bopt.scenarios,
                      "hd|fullhd|twok|qhd|qkuhd|fk|sk|ek or HxWxC (repeatable; default hd,fullhd)");
    bench->add_option("--reps", bopt.reps, "Repetitions per scenario (25 reproduces the protocol)")
        ->default_val(5);
    bench->add_option("--seed", bopt.seed, "mt19937_64 seed for the tensor stream")
        ->default_val(42);
    auto* bench_cr = bench->add_option("--cr", bopt.cr, "Stored-fraction budget")->default_val(0.1);
    auto* bench_ranks =
        bench->add_option("--ranks", bopt.ranks, "Fix baseline ranks instead of deriving from --cr")
            ->delimiter(',');
    bench_cr->excludes(bench_ranks);
    bench->add_flag("--direct-svd", bopt.direct_svd, "Baseline uses a direct SVD per unfolding");
    bench->add_option("--json", bopt.json_path, "Write per-scenario results as JSON to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compress->parsed()) return run_compress(copt);
        if (decompress->parsed()) return run_decompress(dopt);
        if (info->parsed()) return run_info(info_path, info_json);
        if (bench->parsed()) return run_bench(bopt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
