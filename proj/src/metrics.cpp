#include "archrecon/metrics.hpp"

#include "archrecon/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <stdexcept>

namespace archrecon {

namespace {

constexpr std::array<const char*, 7> kMetricRows = {
    "S1 #μs    microservices",        "S2 #Cμs   connections",
    "D1 #PDEs  persistent entities",  "D2 #TDEs  transient entities",
    "D3 #RDEs  relationships",        "D4 #MDEs  merge candidate entities",
    "D5 #MRDEs merge candidate rels",
};

// Display width of the labels above (μ is two bytes, one column).
std::size_t display_width(std::string_view s) {
  std::size_t w = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++w;
  }
  return w;
}

std::string pad_right(std::string_view s, std::size_t width) {
  std::string out(s);
  for (std::size_t w = display_width(s); w < width; ++w) out += ' ';
  return out;
}

std::pair<EntityKey, EntityKey> undirected(EntityKey a, EntityKey b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

}  // namespace

std::vector<std::size_t> MetricsReport::values() const {
  return {s1_microservices, s2_connections,    d1_persistent,         d2_transient,
          d3_relationships, d4_merge_entities, d5_merge_relationships};
}

std::size_t metric_s1(const SystemModel& system) { return system.microservices.size(); }

std::size_t metric_s2(const SystemModel& system) {
  std::size_t n = 0;
  for (const auto& ms : system.microservices) {
    n += static_cast<std::size_t>(std::count_if(ms.calls.begin(), ms.calls.end(),
                                                [](const CallSite& c) { return c.resolved(); }));
  }
  return n;
}

std::size_t metric_d1(const SystemModel& system) {
  std::size_t n = 0;
  for (const auto& ms : system.microservices) n += ms.persistent_entities.size();
  return n;
}

std::size_t metric_d2(const SystemModel& system) {
  std::size_t n = 0;
  for (const auto& ms : system.microservices) n += ms.transient_entities.size();
  return n;
}

std::set<std::pair<EntityKey, EntityKey>> mirrored_relationships(const SystemModel& system) {
  std::set<std::pair<EntityKey, EntityKey>> mr;
  for (const auto& ms : system.microservices) {
    for (const auto* group : {&ms.persistent_entities, &ms.transient_entities}) {
      for (const auto& e : *group) {
        for (const auto& r : e.relationships) {
          mr.emplace(r.source, r.destination);
          mr.emplace(r.destination, r.source);
        }
      }
    }
  }
  return mr;
}

std::size_t metric_d3(const SystemModel& system) { return mirrored_relationships(system).size() / 2; }

std::size_t metric_d4(const SystemModel& system, const MergeResolution& resolution) {
  return metric_d1(system) + metric_d2(system) - resolution.merged_entities().size();
}

std::size_t metric_d5(const SystemModel& system, const MergeResolution& resolution) {
  std::set<std::pair<EntityKey, EntityKey>> merged;
  for (const auto& r : resolution.merged_relationships()) merged.insert(undirected(r.source, r.destination));
  return metric_d3(system) - merged.size();
}

MetricsReport compute_report(const SystemModel& system, const MergeResolution& resolution) {
  MetricsReport r;
  r.version_label = system.version_label;
  r.s1_microservices = metric_s1(system);
  r.s2_connections = metric_s2(system);
  r.d1_persistent = metric_d1(system);
  r.d2_transient = metric_d2(system);
  r.d3_relationships = metric_d3(system);
  r.d4_merge_entities = metric_d4(system, resolution);
  r.d5_merge_relationships = metric_d5(system, resolution);
  for (const auto& ms : system.microservices) {
    for (const auto& e : ms.persistent_entities) {
      (e.persistence == Persistence::NonRelational ? r.supplemental.non_relational : r.supplemental.relational)++;
    }
    for (const auto& c : ms.calls) {
      if (!c.resolved()) ++r.supplemental.unmatched_calls;
    }
  }
  r.supplemental.context_map_size = resolution.merged_entities().size();
  return r;
}

EvolutionTimeline build_timeline(std::vector<MetricsReport> reports) {
  if (reports.empty()) throw std::invalid_argument("a timeline needs at least one report");
  std::set<std::string> labels;
  for (const auto& r : reports) {
    if (!labels.insert(r.version_label).second) throw DuplicateVersionLabel(r.version_label);
  }
  EvolutionTimeline timeline;
  for (std::size_t i = 1; i < reports.size(); ++i) {
    MetricsDelta d{reports[i - 1].version_label, reports[i].version_label, {}};
    const auto before = reports[i - 1].values();
    const auto after = reports[i].values();
    for (std::size_t k = 0; k < before.size(); ++k) {
      d.values.push_back(static_cast<long long>(after[k]) - static_cast<long long>(before[k]));
    }
    timeline.deltas.push_back(std::move(d));
  }
  timeline.reports = std::move(reports);
  return timeline;
}

std::string format_report_table(const std::vector<MetricsReport>& reports) {
  std::size_t label_width = 0;
  for (const char* row : kMetricRows) label_width = std::max(label_width, display_width(row));
  std::vector<std::size_t> widths;
  for (const auto& r : reports) widths.push_back(std::max<std::size_t>(r.version_label.size(), 6));

  std::string out = pad_right("Metric", label_width);
  for (std::size_t c = 0; c < reports.size(); ++c) out += fmt::format(" | {:>{}}", reports[c].version_label, widths[c]);
  out += '\n';
  out += std::string(label_width, '-');
  for (std::size_t w : widths) out += "-+-" + std::string(w, '-');
  out += '\n';
  for (std::size_t row = 0; row < kMetricRows.size(); ++row) {
    out += pad_right(kMetricRows[row], label_width);
    for (std::size_t c = 0; c < reports.size(); ++c) {
      out += fmt::format(" | {:>{}}", reports[c].values()[row], widths[c]);
    }
    out += '\n';
  }
  return out;
}

std::string format_delta_table(const EvolutionTimeline& timeline) {
  std::size_t label_width = 0;
  for (const char* row : kMetricRows) label_width = std::max(label_width, display_width(row));
  std::string out = pad_right("Delta", label_width);
  std::vector<std::size_t> widths;
  for (const auto& d : timeline.deltas) {
    const std::string head = d.from + "->" + d.to;
    widths.push_back(std::max<std::size_t>(head.size(), 6));
    out += fmt::format(" | {:>{}}", head, widths.back());
  }
  out += '\n';
  out += std::string(label_width, '-');
  for (std::size_t w : widths) out += "-+-" + std::string(w, '-');
  out += '\n';
  for (std::size_t row = 0; row < kMetricRows.size(); ++row) {
    out += pad_right(kMetricRows[row], label_width);
    for (std::size_t c = 0; c < timeline.deltas.size(); ++c) {
      out += fmt::format(" | {:>+{}}", timeline.deltas[c].values[row], widths[c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace archrecon
