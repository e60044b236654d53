#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process
// with captured streams.
//
// Exit codes: 0 success, 1 domain errors (non-PSD input, failed property
// suite, ...), 2 I/O, parse and usage errors.

#include <algorithm>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "opcontrast/blocks.hpp"
#include "opcontrast/contrast.hpp"
#include "opcontrast/errors.hpp"
#include "opcontrast/matrix_io.hpp"
#include "opcontrast/pnm.hpp"
#include "opcontrast/report.hpp"
#include "opcontrast/verify.hpp"

namespace opcontrast::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitInput = 2;

namespace detail {

inline void emit(std::ostream& out, const ReportDocument& doc, bool json) {
  if (json) {
    out << to_json(doc).dump(2) << "\n";
  } else {
    out << to_text(doc);
  }
}

inline int cmd_delta(std::ostream& out, const std::string& path, bool scan, bool json) {
  const auto x = to_hermitian(parse_matrix_text(read_file(path)));
  ReportDocument doc;
  doc.input = {{"path", path}, {"dim", x.dim()}, {"complex", !x.is_real()}};
  doc.config = {{"scan", scan}};
  if (scan) {
    const ScanConfig cfg;
    doc.config["bracket_expand"] = cfg.bracket_expand;
    doc.config["golden_tol"] = cfg.golden_tol;
    doc.config["max_iters"] = cfg.max_iters;
    doc.add(metric_from_report("delta", delta_scan(x, cfg)));
  } else {
    doc.add(metric_from_report("delta", delta(x)));
  }
  emit(out, doc, json);
  return kExitOk;
}

inline int cmd_blocks(std::ostream& out, const std::string& path, bool json) {
  const auto b = to_block_operator(parse_block_text(read_file(path)));
  const CentralSearchConfig cfg;
  ReportDocument doc;
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& blk : b.blocks()) dims.push_back(blk.dim());
  doc.input = {{"path", path}, {"blocks", b.size()}, {"block_dims", dims}};
  doc.config = {{"scale_grid", cfg.scale_grid},
                {"refine_rounds", cfg.refine_rounds},
                {"refine_factor", cfg.refine_factor}};
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::string label =
        b.labels().empty() || b.labels()[i].empty() ? std::to_string(i) : b.labels()[i];
    doc.add(metric_from_report("block[" + label + "]", delta(b.block(i))));
  }
  const double prime = delta_prime(b);
  const auto central = delta_central_search(b, cfg);
  doc.add({"delta_prime", prime, "block_sup", std::nullopt, std::nullopt, std::nullopt});
  MetricEntry c{"delta_central", central.value, "central_search", std::nullopt, std::nullopt,
                std::nullopt};
  if (central.optimal_scale > 0.0) c.optimal_scale = central.optimal_scale;
  doc.add(c);
  doc.extras["central_error_bound"] = central.error_bound;
  doc.extras["direct_sum_bound_holds"] = central.value <= prime + 2e-3;
  emit(out, doc, json);
  return kExitOk;
}

inline int cmd_delta2(std::ostream& out, const std::string& path, bool json) {
  const auto m = to_rect(parse_matrix_text(read_file(path)));
  ReportDocument doc;
  doc.input = {{"path", path}, {"rows", m.rows()}, {"cols", m.cols()}};
  const bool left = m.cols() <= m.rows();
  const auto r = delta(left ? m.gram() : m.outer_gram());
  auto e = metric_from_report("delta2", r);
  e.path = left ? "gram_MtM" : "gram_MMt";
  doc.add(e);
  emit(out, doc, json);
  return kExitOk;
}

inline int cmd_image(std::ostream& out, const std::string& path, const std::string& mode,
                     bool json) {
  const auto img = parse_pnm(read_file(path));
  ReportDocument doc;
  doc.input = {{"path", path},
               {"width", img.width},
               {"height", img.height},
               {"channels", img.channel_count()},
               {"maxval", img.maxval}};
  doc.config = {{"mode", mode}};
  static const char* kRgb[] = {"r", "g", "b"};
  auto channel_name = [&](std::size_t c) {
    return img.channel_count() == 1 ? std::string("gray") : std::string(kRgb[c]);
  };
  if (mode == "michelson") {
    double overall = 0.0;
    for (std::size_t c = 0; c < img.channel_count(); ++c) {
      const double v = michelson_contrast(img.channels[c]);
      overall = std::max(overall, v);
      doc.add({"michelson[" + channel_name(c) + "]", v, "min_max", std::nullopt, std::nullopt,
               std::nullopt});
    }
    doc.add({"michelson", overall, "channel_sup", std::nullopt, std::nullopt, std::nullopt});
  } else {
    std::vector<RectMatrix> channels;
    for (std::size_t c = 0; c < img.channel_count(); ++c) {
      channels.push_back(img.channel_matrix(c));
      doc.add({"delta2[" + channel_name(c) + "]", delta2(channels.back()), "gram", std::nullopt,
               std::nullopt, std::nullopt});
    }
    doc.add({"delta2_prime", delta2_prime(ChannelStack(std::move(channels))), "channel_sup",
             std::nullopt, std::nullopt, std::nullopt});
  }
  emit(out, doc, json);
  return kExitOk;
}

inline int cmd_cone(std::ostream& out, const std::string& path, double c, double slack,
                    bool json) {
  const auto x = to_hermitian(parse_matrix_text(read_file(path)));
  ReportDocument doc;
  doc.input = {{"path", path}, {"dim", x.dim()}};
  doc.config = {{"c", c}, {"slack", slack}};
  const auto r = delta(x);
  doc.add(metric_from_report("delta", r));
  doc.extras["member"] = cone_member(x, c, slack);
  emit(out, doc, json);
  return kExitOk;
}

inline int cmd_verify(std::ostream& out, std::size_t seeds, std::uint64_t base_seed, bool json) {
  std::vector<SuiteResult> results;
  for (const auto& s : property_suites()) results.push_back(run_suite(s, seeds, base_seed));
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const SuiteResult& r) { return r.passed(); });
  if (json) {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["config"] = {{"seeds", seeds}, {"base_seed", base_seed}};
    j["passed"] = ok;
    auto& arr = j["suites"] = nlohmann::json::array();
    for (const auto& r : results) {
      arr.push_back({{"name", r.name},
                     {"claim", r.claim},
                     {"cases", r.cases},
                     {"checks", r.checks},
                     {"failures", r.failures},
                     {"worst_violation", r.worst},
                     {"passed", r.passed()}});
    }
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      out << (r.passed() ? "PASS " : "FAIL ") << r.name << "  cases=" << r.cases
          << " checks=" << r.checks << " failures=" << r.failures
          << " worst=" << format_sig9(r.worst) << "  (" << r.claim << ")\n";
    }
    out << (ok ? "all property suites passed" : "property suite FAILURES") << "\n";
  }
  return ok ? kExitOk : kExitDomain;
}

}  // namespace detail

// `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Michelson contrast of positive matrices, block operators and images",
               "opcontrast"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  bool json = false;
  bool scan = false;
  std::string file;
  std::string mode = "michelson";
  double c = 0.0;
  double slack = 0.0;
  std::size_t seeds = 1000;
  std::uint64_t base_seed = 0;

  auto* delta_cmd = app.add_subcommand("delta", "Contrast of a PSD matrix file");
  delta_cmd->add_option("matrix", file, "Matrix text file")->required();
  delta_cmd->add_flag("--scan", scan, "Evaluate the defining infimum by golden-section search");
  delta_cmd->add_flag("--json", json, "Emit a JSON report");

  auto* blocks_cmd = app.add_subcommand("blocks", "Block-sup and central contrasts of a block file");
  blocks_cmd->add_option("blockfile", file, "Block operator file")->required();
  blocks_cmd->add_flag("--json", json, "Emit a JSON report");

  auto* delta2_cmd = app.add_subcommand("delta2", "Squared-singular-value contrast of a rectangular matrix");
  delta2_cmd->add_option("matrix", file, "Matrix text file")->required();
  delta2_cmd->add_flag("--json", json, "Emit a JSON report");

  auto* image_cmd = app.add_subcommand("image", "Contrast of a PGM/PPM image");
  image_cmd->add_option("pnm", file, "Netpbm P2/P3/P5/P6 file")->required();
  image_cmd->add_option("--mode", mode, "michelson or delta2")
      ->check(CLI::IsMember({"michelson", "delta2"}));
  image_cmd->add_flag("--json", json, "Emit a JSON report");

  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized property suites");
  verify_cmd->add_option("--seeds", seeds, "Cases per suite")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", base_seed, "Base seed");
  verify_cmd->add_flag("--json", json, "Emit a JSON summary");

  auto* cone_cmd = app.add_subcommand("cone", "Membership in the cone K_c");
  cone_cmd->add_option("matrix", file, "Matrix text file")->required();
  cone_cmd->add_option("--c", c, "Contrast threshold in [0, 1]")->required();
  cone_cmd->add_option("--slack", slack, "Tolerance added to c");
  cone_cmd->add_flag("--json", json, "Emit a JSON report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*delta_cmd) return detail::cmd_delta(out, file, scan, json);
    if (*blocks_cmd) return detail::cmd_blocks(out, file, json);
    if (*delta2_cmd) return detail::cmd_delta2(out, file, json);
    if (*image_cmd) return detail::cmd_image(out, file, mode, json);
    if (*verify_cmd) return detail::cmd_verify(out, seeds, base_seed, json);
    if (*cone_cmd) return detail::cmd_cone(out, file, c, slack, json);
  } catch (const ParseError& e) {
    err << "error: " << file << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitInput;
}

}  // namespace opcontrast::cli
