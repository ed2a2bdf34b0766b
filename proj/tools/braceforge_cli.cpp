#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <braceforge/braceforge.hpp>

namespace bf = braceforge;

namespace {

enum Exit : int { kOk = 0, kInputError = 1, kUnsupported = 2, kViolation = 3 };

struct RunConfig {
  std::string group;
  std::string table;
  std::vector<std::string> catalog_files;
  long long p = 0;
  long long q = 0;
  std::optional<long long> g;
  std::string format = "text";
  std::string out;
  std::string cache_dir;
  std::size_t jobs = 1;
  bool with_oracle = false;
  bool catalog_only = false;
  bool cross_check = false;
};

int exit_for(const bf::Error& e) {
  switch (e.code()) {
    case bf::ErrorCode::UnsupportedOrder:
    case bf::ErrorCode::OrderTooLargeForOracle:
      return kUnsupported;
    default:
      return kInputError;
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    bf::write_file(cfg.out, text);
  }
}

bf::GroupPtr load_group(const RunConfig& cfg) {
  if (cfg.group.empty() == cfg.table.empty()) {
    throw bf::Error(bf::ErrorCode::BadInput, "give exactly one of --group and --table");
  }
  auto G = cfg.table.empty() ? bf::preset_group(cfg.group) : bf::load_group_file(cfg.table);
  return std::make_shared<const bf::FiniteGroup>(std::move(G));
}

// Each file holds one group object or an array of them.
bf::GroupCatalog load_catalog(const RunConfig& cfg) {
  bf::GroupCatalog catalog;
  for (const auto& path : cfg.catalog_files) {
    const bf::Json j = bf::detail::parse_json_text(bf::read_file(path), path);
    const bf::Json list = j.is_array() ? j : bf::Json::array({j});
    for (const auto& entry : list) {
      bf::FiniteGroup G = bf::group_from_json(entry);
      const std::string name = G.label();
      catalog.add(name, std::move(G));
    }
  }
  return catalog;
}

bf::EnumerateOptions enumerate_options(const RunConfig& cfg, const bf::GroupCatalog& catalog) {
  bf::EnumerateOptions o;
  o.jobs = cfg.jobs;
  o.catalog = &catalog;
  return o;
}

int cmd_enumerate(const RunConfig& cfg) {
  const auto G = load_group(cfg);
  const auto catalog = load_catalog(cfg);
  const auto options = enumerate_options(cfg, catalog);
  auto subgroups = bf::cached_enumerate(G, options, bf::resolve_cache_dir(cfg.cache_dir));
  auto listing = bf::make_listing(G, std::move(subgroups), catalog);
  if (cfg.with_oracle) {
    listing.oracle_checked = true;
    listing.oracle_agrees = bf::direct_enumerate_oracle(G) == listing.subgroups;
  }
  emit(cfg, bf::render_listing(listing, bf::parse_format(cfg.format)));
  return listing.oracle_agrees ? kOk : kViolation;
}

int cmd_classify(const RunConfig& cfg) {
  const auto G = load_group(cfg);
  const auto catalog = load_catalog(cfg);
  const auto options = enumerate_options(cfg, catalog);
  auto subgroups = bf::cached_enumerate(G, options, bf::resolve_cache_dir(cfg.cache_dir));
  bool oracle_ok = true;
  if (cfg.with_oracle) oracle_ok = bf::direct_enumerate_oracle(G) == subgroups;
  const auto report = bf::build_report(G, subgroups, catalog);
  std::string text = bf::render_report(report, bf::parse_format(cfg.format));
  emit(cfg, text);
  if (!oracle_ok) std::cerr << "oracle disagrees with the holomorph enumeration\n";
  return bf::all_hold(report.laws) && oracle_ok ? kOk : kViolation;
}

int cmd_pq_verify(const RunConfig& cfg) {
  bf::PqOptions options;
  options.enumerate.jobs = cfg.jobs;
  if (cfg.catalog_only) options.cross_check = false;
  if (cfg.cross_check) options.cross_check = true;
  const auto v = bf::verify_pq(cfg.p, cfg.q, cfg.g, options);
  emit(cfg, bf::render_pq(v, bf::parse_format(cfg.format)));
  return v.all_hold() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular G-stable subgroups, skew braces and their partitions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--jobs", cfg.jobs, "worker threads for the holomorph search")->check(CLI::Range(1, 256));
  };
  auto add_group = [&](CLI::App* sub) {
    auto* group = sub->add_option("--group", cfg.group, "group spec, e.g. cyclic:6 or metacyclic:7,3,2");
    auto* table = sub->add_option("--table", cfg.table, "JSON Cayley table file");
    group->excludes(table);
    sub->add_option("--cache-dir", cfg.cache_dir, "enumeration cache directory (else $BRACEFORGE_CACHE)");
    sub->add_option("--catalog", cfg.catalog_files,
                    "JSON file listing every isomorphism type of an order outside the built-in catalog");
    sub->add_flag("--with-oracle", cfg.with_oracle, "cross-check with the direct search (order <= 8)");
    add_output(sub);
  };

  auto* enumerate = app.add_subcommand("enumerate", "list the regular G-stable subgroups of Perm(G)");
  add_group(enumerate);
  auto* classify = app.add_subcommand("classify", "brace, G-isomorphism and rho partitions with law verdicts");
  add_group(classify);
  auto* pq = app.add_subcommand("pq-verify", "verify the order pq catalog against enumeration");
  pq->add_option("--p", cfg.p, "larger prime")->required();
  pq->add_option("--q", cfg.q, "smaller prime")->required();
  pq->add_option("--g", cfg.g, "element of order q modulo p (default: least such)");
  auto* only = pq->add_flag("--catalog-only", cfg.catalog_only, "skip the enumeration cross-check");
  auto* force = pq->add_flag("--cross-check", cfg.cross_check, "enumerate even above the default size");
  only->excludes(force);
  add_output(pq);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*enumerate) return cmd_enumerate(cfg);
    if (*classify) return cmd_classify(cfg);
    return cmd_pq_verify(cfg);
  } catch (const bf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
