// Procedural website generation with calibrated difficulty.
//
// Generation draws uniformly from a 44-entry primitive registry (42 content
// primitives plus the control primitives new_page and stop): new_page closes
// the current page, stop closes the website, anything else lands on the
// current page. Pages that close empty are dropped; pages that close with no
// active primitive are regenerated (their difficulty would be infinite); a
// website that closes with no pages is regenerated.
//
// Page difficulty is -ln(n_active / (n_active + n_passive)) nats, the
// negative log of a random agent's chance to pick an active primitive;
// website difficulty is the sum over pages. Levels 1/2/3 correspond to
// random-agent success probabilities of at least 50%/25%/10%.
//
// All randomness comes from SplitMix64 with one stream per website index
// (stream seed = split_stream(config seed, index)), so output is
// reproducible across runs and platforms.
#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "a2bench/jsonfmt.hpp"
#include "a2bench/model.hpp"
#include "a2bench/prng.hpp"

namespace a2bench {

struct PrimitiveRegistry {
  std::vector<PrimitiveDef> entries;
};

inline PrimitiveRegistry default_registry() {
  using K = PrimitiveKind;
  return {{
      // content primitives an agent must interact with
      {"text_field", K::active},
      {"email_field", K::active},
      {"password_field", K::active},
      {"phone_field", K::active},
      {"search_box", K::active},
      {"text_area", K::active},
      {"checkbox", K::active},
      {"agree_checkbox", K::active},
      {"radio_group", K::active},
      {"dropdown_select", K::active},
      {"multi_select", K::active},
      {"date_picker", K::active},
      {"time_picker", K::active},
      {"number_spinner", K::active},
      {"range_slider", K::active},
      {"file_upload", K::active},
      {"toggle_switch", K::active},
      {"color_picker", K::active},
      {"rating_stars", K::active},
      {"captcha_box", K::active},
      {"submit_button", K::active},
      {"next_button", K::active},
      {"confirm_button", K::active},
      {"save_button", K::active},
      // content primitives an agent must ignore or avoid
      {"ad_banner", K::passive},
      {"hero_image", K::passive},
      {"logo", K::passive},
      {"navigation_bar", K::passive},
      {"breadcrumb_trail", K::passive},
      {"footer_links", K::passive},
      {"social_media_icons", K::passive},
      {"promo_carousel", K::passive},
      {"sidebar_widget", K::passive},
      {"cookie_notice", K::passive},
      {"newsletter_teaser", K::passive},
      {"testimonial_quote", K::passive},
      {"video_embed", K::passive},
      {"image_gallery", K::passive},
      {"progress_indicator", K::passive},
      {"tooltip_hint", K::passive},
      {"decorative_divider", K::passive},
      {"external_link", K::passive},
      // control primitives steering generation
      {"new_page", K::control},
      {"stop", K::control},
  }};
}

inline Violations validate(const PrimitiveRegistry& reg) {
  Violations v;
  std::set<std::string> names;
  std::size_t active = 0, passive = 0;
  std::set<std::string> control;
  for (const auto& e : reg.entries) {
    detail::require(v, !e.name.empty(), "entries.name", "non-empty");
    detail::require(v, names.insert(e.name).second, "entries.name", "unique");
    switch (e.kind) {
      case PrimitiveKind::active: ++active; break;
      case PrimitiveKind::passive: ++passive; break;
      case PrimitiveKind::control: control.insert(e.name); break;
    }
  }
  detail::require(v, active >= 1, "entries", "at least one active primitive");
  detail::require(v, passive >= 1, "entries",
                  "at least one passive primitive");
  detail::require(v,
                  control == std::set<std::string>{"new_page", "stop"},
                  "entries", "control primitives are exactly new_page/stop");
  return v;
}

// Registry override file: {"primitives": [{"name", "kind"}, ...]}; extra
// per-primitive fields are ignored.
inline PrimitiveRegistry parse_registry(std::istream& in,
                                        const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": malformed registry JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("primitives") ||
      !doc.at("primitives").is_array())
    throw std::runtime_error(path +
                             ": registry must contain a \"primitives\" array");
  PrimitiveRegistry reg;
  for (const auto& j : doc.at("primitives")) {
    if (!j.is_object() || !j.contains("name") || !j.at("name").is_string() ||
        !j.contains("kind") || !j.at("kind").is_string())
      throw std::runtime_error(
          path + ": every primitive needs string \"name\" and \"kind\"");
    const auto kind = primitive_kind_from_string(j.at("kind"));
    if (!kind)
      throw std::runtime_error(path + ": unknown primitive kind \"" +
                               j.at("kind").get<std::string>() + "\"");
    reg.entries.push_back({j.at("name").get<std::string>(), *kind});
  }
  const auto violations = validate(reg);
  if (!violations.empty())
    throw std::runtime_error(path + ": invalid registry: " +
                             violations.front().field + " " +
                             violations.front().rule);
  return reg;
}

struct GenConfig {
  std::size_t num_websites = 1;
  std::uint64_t seed = 0;
  PrimitiveRegistry registry = default_registry();
  std::size_t max_primitives_per_website = 200;
  std::optional<DifficultyLevel> level_filter;
  std::size_t max_level_retries = 10000;
};

struct GenStats {
  std::vector<std::uint64_t> draw_counts;  // per registry entry
  std::uint64_t websites_regenerated = 0;  // all-empty or over the size bound
  std::uint64_t pages_regenerated = 0;     // closed with no active primitive
  std::uint64_t level_rejections = 0;
};

inline double page_difficulty(const PageSpec& page) {
  const auto active = page.active_count();
  const auto total = active + page.passive_count();
  if (total < 1)
    throw std::invalid_argument("page difficulty needs >= 1 primitive");
  if (active < 1)
    throw std::invalid_argument(
        "page difficulty undefined with no active primitive");
  return -std::log(static_cast<double>(active) / static_cast<double>(total));
}

inline double website_difficulty(const WebsiteSpec& site) {
  double sum = 0.0;
  for (const auto& page : site.pages) sum += page_difficulty(page);
  return sum;
}

// Level thresholds on p = exp(-difficulty). The 1e-12 slack absorbs exp/log
// rounding so sites built to land exactly on a threshold classify upward.
inline DifficultyLevel level_for_success_probability(double p) {
  constexpr double tol = 1e-12;
  if (p >= 0.50 - tol) return DifficultyLevel::level1;
  if (p >= 0.25 - tol) return DifficultyLevel::level2;
  if (p >= 0.10 - tol) return DifficultyLevel::level3;
  return DifficultyLevel::unclassified;
}

inline DifficultyLevel difficulty_level(const WebsiteSpec& site) {
  return level_for_success_probability(std::exp(-site.difficulty_nats));
}

namespace detail {

// One site from its dedicated stream; loops until a non-degenerate site
// comes out. Control draws never land on pages.
inline WebsiteSpec generate_one_website(const GenConfig& cfg,
                                        std::uint64_t stream_seed,
                                        GenStats* stats) {
  SplitMix64 rng(stream_seed);
  const auto& entries = cfg.registry.entries;

  WebsiteSpec site;
  site.seed = stream_seed;

  for (;;) {
    std::vector<PageSpec> pages;
    PageSpec current;
    std::size_t placed = 0;
    bool over_budget = false;

    const auto close_page = [&] {
      if (current.primitives.empty()) return;
      if (current.active_count() == 0) {
        if (stats) ++stats->pages_regenerated;
      } else {
        pages.push_back(std::move(current));
      }
      current = {};
    };

    for (;;) {
      const auto pick = rng.next_below(entries.size());
      if (stats) ++stats->draw_counts[pick];
      const auto& e = entries[pick];
      if (e.kind == PrimitiveKind::control) {
        if (e.name == "stop") {
          close_page();
          break;
        }
        close_page();  // new_page
        continue;
      }
      if (++placed > cfg.max_primitives_per_website) {
        over_budget = true;
        break;
      }
      current.primitives.push_back(e);
    }

    if (over_budget || pages.empty()) {
      if (stats) ++stats->websites_regenerated;
      continue;
    }
    site.pages = std::move(pages);
    site.difficulty_nats = website_difficulty(site);
    site.level = difficulty_level(site);
    return site;
  }
}

}  // namespace detail

inline std::vector<WebsiteSpec> generate_websites(const GenConfig& cfg,
                                                  GenStats* stats = nullptr) {
  const auto violations = validate(cfg.registry);
  if (!violations.empty())
    throw std::invalid_argument("invalid registry: " +
                                violations.front().field + " " +
                                violations.front().rule);
  if (cfg.num_websites < 1)
    throw std::invalid_argument("num_websites must be >= 1");
  if (stats) stats->draw_counts.assign(cfg.registry.entries.size(), 0);

  std::vector<WebsiteSpec> sites;
  sites.reserve(cfg.num_websites);
  // Website i is a pure function of (seed, i): level-filter rejections walk
  // a per-site sub-family of streams, never a neighbour's.
  for (std::size_t i = 0; i < cfg.num_websites; ++i) {
    const std::uint64_t site_root = split_stream(cfg.seed, i);
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt >= cfg.max_level_retries)
        throw std::runtime_error(
            "level filter retry bound exceeded while generating website " +
            std::to_string(i));
      auto site = detail::generate_one_website(
          cfg, split_stream(site_root, attempt), stats);
      if (cfg.level_filter && site.level != *cfg.level_filter) {
        if (stats) ++stats->level_rejections;
        continue;
      }
      site.website_id = "website-" + std::to_string(i);
      sites.push_back(std::move(site));
      break;
    }
  }
  return sites;
}

// Monte Carlo estimate of the random-agent success probability: one uniform
// pick per page among that page's primitives, success iff every pick is
// active.
inline double estimate_random_success(const WebsiteSpec& site,
                                      std::uint64_t trials,
                                      std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  SplitMix64 rng(seed);
  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    bool ok = true;
    for (const auto& page : site.pages) {
      const auto pick = rng.next_below(page.primitives.size());
      if (page.primitives[pick].kind != PrimitiveKind::active) {
        ok = false;
        break;
      }
    }
    if (ok) ++successes;
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

// ---------------------------------------------------------------------------
// WebsiteSpec JSON (canonical: sorted keys, 17-significant-digit floats)

inline std::string website_to_json(const WebsiteSpec& site) {
  std::ostringstream out;
  out << "{\"difficulty_nats\":" << format_double_17(site.difficulty_nats)
      << ",\"level\":";
  if (site.level == DifficultyLevel::unclassified)
    out << "\"unclassified\"";
  else
    out << to_string(site.level);
  out << ",\"pages\":[";
  for (std::size_t p = 0; p < site.pages.size(); ++p) {
    if (p) out << ",";
    out << "{\"primitives\":[";
    const auto& prims = site.pages[p].primitives;
    for (std::size_t i = 0; i < prims.size(); ++i) {
      if (i) out << ",";
      out << "{\"kind\":" << json_string(to_string(prims[i].kind))
          << ",\"name\":" << json_string(prims[i].name) << "}";
    }
    out << "]}";
  }
  out << "],\"seed\":" << site.seed
      << ",\"website_id\":" << json_string(site.website_id) << "}";
  return out.str();
}

inline WebsiteSpec website_from_json(const std::string& text,
                                     const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": malformed website JSON: " + e.what());
  }
  WebsiteSpec site;
  if (!doc.is_object())
    throw std::runtime_error(path + ": website spec must be an object");
  for (const char* field : {"difficulty_nats", "level", "pages", "seed",
                            "website_id"})
    if (!doc.contains(field))
      throw std::runtime_error(path + ": missing field \"" +
                               std::string(field) + "\"");
  site.website_id = doc.at("website_id").get<std::string>();
  site.seed = doc.at("seed").get<std::uint64_t>();
  site.difficulty_nats = doc.at("difficulty_nats").get<double>();
  const auto& level = doc.at("level");
  if (level.is_string() && level.get<std::string>() == "unclassified") {
    site.level = DifficultyLevel::unclassified;
  } else if (level.is_number_integer()) {
    const auto l = level.get<int>();
    if (l < 1 || l > 3)
      throw std::runtime_error(path + ": level must be 1, 2, 3");
    site.level = static_cast<DifficultyLevel>(l);
  } else {
    throw std::runtime_error(path +
                             ": level must be 1..3 or \"unclassified\"");
  }
  for (const auto& jp : doc.at("pages")) {
    PageSpec page;
    if (!jp.is_object() || !jp.contains("primitives"))
      throw std::runtime_error(path + ": page missing \"primitives\"");
    for (const auto& jprim : jp.at("primitives")) {
      const auto kind =
          primitive_kind_from_string(jprim.at("kind").get<std::string>());
      if (!kind)
        throw std::runtime_error(path + ": unknown primitive kind");
      page.primitives.push_back(
          {jprim.at("name").get<std::string>(), *kind});
    }
    site.pages.push_back(std::move(page));
  }
  return site;
}

// ---------------------------------------------------------------------------
// Static HTML rendering

namespace detail {

inline std::string element_for(const PrimitiveDef& prim, std::size_t index) {
  static const std::map<std::string, std::string> tags = {
      {"text_field", "<input type=\"text\""},
      {"email_field", "<input type=\"email\""},
      {"password_field", "<input type=\"password\""},
      {"phone_field", "<input type=\"tel\""},
      {"search_box", "<input type=\"search\""},
      {"checkbox", "<input type=\"checkbox\""},
      {"agree_checkbox", "<input type=\"checkbox\""},
      {"toggle_switch", "<input type=\"checkbox\""},
      {"radio_group", "<input type=\"radio\""},
      {"date_picker", "<input type=\"date\""},
      {"time_picker", "<input type=\"time\""},
      {"number_spinner", "<input type=\"number\""},
      {"range_slider", "<input type=\"range\""},
      {"file_upload", "<input type=\"file\""},
      {"color_picker", "<input type=\"color\""},
      {"rating_stars", "<input type=\"number\""},
      {"captcha_box", "<input type=\"text\""},
  };
  const std::string id = "p" + std::to_string(index);
  const std::string common = " id=\"" + id + "\" data-kind=\"" +
                             to_string(prim.kind) + "\" data-primitive=\"" +
                             prim.name + "\"";
  if (auto it = tags.find(prim.name); it != tags.end())
    return it->second + common + ">";
  if (prim.name == "text_area")
    return "<textarea" + common + "></textarea>";
  if (prim.name == "dropdown_select" || prim.name == "multi_select")
    return "<select" + common + "><option>-</option></select>";
  if (prim.name.ends_with("_button"))
    return "<button" + common + ">" + prim.name + "</button>";
  if (prim.name == "external_link")
    return "<a" + common + " href=\"#\">" + prim.name + "</a>";
  if (prim.name == "hero_image" || prim.name == "logo" ||
      prim.name == "ad_banner" || prim.name == "image_gallery")
    return "<img" + common + " alt=\"" + prim.name + "\">";
  if (prim.kind == PrimitiveKind::active)
    return "<input type=\"text\"" + common + ">";
  return "<div" + common + ">" + prim.name + "</div>";
}

}  // namespace detail

inline std::string render_page_html(const WebsiteSpec& site,
                                    std::size_t page_index) {
  const auto& page = site.pages.at(page_index);
  std::ostringstream out;
  out << "<!doctype html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>" << site.website_id << " - page " << page_index + 1 << " of "
      << site.pages.size() << "</title>\n</head>\n<body>\n<main>\n";
  for (std::size_t i = 0; i < page.primitives.size(); ++i)
    out << "  " << detail::element_for(page.primitives[i], i) << "\n";
  out << "</main>\n<nav>\n";
  if (page_index + 1 < site.pages.size())
    out << "  <a id=\"next\" href=\"page-" << page_index + 2
        << ".html\">next</a>\n";
  out << "</nav>\n</body>\n</html>\n";
  return out.str();
}

// One HTML file per page plus a JSON sidecar; re-rendering overwrites
// byte-identically.
inline std::vector<std::string> render_html(const WebsiteSpec& site,
                                            const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> files;
  for (std::size_t p = 0; p < site.pages.size(); ++p) {
    const auto path =
        (fs::path(out_dir) / ("page-" + std::to_string(p + 1) + ".html"))
            .string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << render_page_html(site, p);
    files.push_back(path);
  }
  const auto sidecar = (fs::path(out_dir) / "website.json").string();
  std::ofstream out(sidecar, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + sidecar);
  out << website_to_json(site) << "\n";
  files.push_back(sidecar);
  return files;
}

}  // namespace a2bench
