#include "archrecon/merger.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace archrecon {

namespace {

std::string_view strip_type_suffix(std::string_view name) {
  for (std::string_view suffix : {"Dto", "DTO", "Entity", "Model", "VO"}) {
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      return name.substr(0, name.size() - suffix.size());
    }
  }
  return name;
}

std::string lowercase(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::set<std::string> name_tokens(std::string_view name) {
  std::set<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.insert(lowercase(current));
    current.clear();
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (!std::isalnum(static_cast<unsigned char>(c))) {
      flush();
      continue;
    }
    const bool upper = std::isupper(static_cast<unsigned char>(c));
    if (upper && !current.empty()) {
      const char prev = current.back();
      const bool next_lower = i + 1 < name.size() && std::islower(static_cast<unsigned char>(name[i + 1]));
      // fooBar | HTTPServer
      if (std::islower(static_cast<unsigned char>(prev)) || std::isdigit(static_cast<unsigned char>(prev)) ||
          (std::isupper(static_cast<unsigned char>(prev)) && next_lower)) {
        flush();
      }
    }
    current += c;
  }
  flush();
  return tokens;
}

template <typename T>
double jaccard(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

using FieldSignature = std::set<std::pair<std::string, std::string>>;

FieldSignature signature(const DataEntity& e, const LanguageProfile& profile) {
  FieldSignature out;
  for (const auto& f : e.fields) {
    std::string type = profile.canonical_type(f.type_name);
    if (f.is_collection) type += "[]";
    out.emplace(lowercase(f.name), std::move(type));
  }
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

std::vector<const DataEntity*> all_entities(const SystemModel& system) {
  std::vector<const DataEntity*> out;
  for (const auto& ms : system.microservices) {
    for (const auto& e : ms.persistent_entities) out.push_back(&e);
    for (const auto& e : ms.transient_entities) out.push_back(&e);
  }
  std::sort(out.begin(), out.end(), [](const DataEntity* a, const DataEntity* b) { return a->key() < b->key(); });
  return out;
}

}  // namespace

double name_similarity(std::string_view a, std::string_view b) {
  const std::string_view sa = strip_type_suffix(a);
  const std::string_view sb = strip_type_suffix(b);
  const double token_score = jaccard(name_tokens(sa), name_tokens(sb));
  const std::string la = lowercase(sa);
  const std::string lb = lowercase(sb);
  const std::size_t longest = std::max(la.size(), lb.size());
  const double edit_score =
      longest == 0 ? 1.0 : 1.0 - static_cast<double>(edit_distance(la, lb)) / static_cast<double>(longest);
  return 0.5 * token_score + 0.5 * edit_score;
}

double field_compatibility(const DataEntity& a, const DataEntity& b, const LanguageProfile& profile) {
  if (a.key() == b.key()) return 1.0;
  const auto fa = signature(a, profile);
  const auto fb = signature(b, profile);
  if (fa.empty() || fb.empty()) return 0.0;
  return jaccard(fa, fb);
}

bool field_subset(const DataEntity& a, const DataEntity& b, const LanguageProfile& profile) {
  auto fa = signature(a, profile);
  auto fb = signature(b, profile);
  if (fa.size() > fb.size()) std::swap(fa, fb);
  if (fa.empty()) return false;
  return std::includes(fb.begin(), fb.end(), fa.begin(), fa.end());
}

std::vector<CandidatePair> find_merge_candidates(const SystemModel& system, MergeThresholds thresholds,
                                                 const LanguageProfile& profile) {
  const auto entities = all_entities(system);
  std::vector<CandidatePair> out;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    for (std::size_t j = i + 1; j < entities.size(); ++j) {
      const DataEntity& a = *entities[i];
      const DataEntity& b = *entities[j];
      if (a.owner == b.owner) continue;
      const double name_score = name_similarity(a.simple_name, b.simple_name);
      if (name_score < thresholds.name) continue;
      const double field_score = field_compatibility(a, b, profile);
      if (field_score < thresholds.field && !field_subset(a, b, profile)) continue;
      out.push_back({a.key(), b.key(), name_score, field_score});
    }
  }
  return out;
}

EntityKey MergeResolution::map_entity(const EntityKey& entity) const {
  auto it = entity_map_.find(entity);
  return it == entity_map_.end() ? entity : it->second;
}

Relationship MergeResolution::map_relationship(const Relationship& r) const {
  const EntityKey source = map_entity(r.source);
  const EntityKey destination = map_entity(r.destination);
  auto it = relationship_images_.find({source, destination});
  if (it != relationship_images_.end()) return it->second;
  return {source, destination, r.via_field};
}

std::size_t MergeResolution::merge_count() const {
  std::size_t merges = 0;
  for (const auto& g : groups_) merges += g.size() - 1;
  return merges;
}

MergeResolution build_resolution(const SystemModel& system, const std::vector<CandidatePair>& candidates) {
  MergeResolution res;
  const auto entities = all_entities(system);
  std::map<EntityKey, std::size_t> index;
  for (std::size_t i = 0; i < entities.size(); ++i) index.emplace(entities[i]->key(), i);
  res.total_entities_ = entities.size();

  DisjointSets sets(entities.size());
  for (const auto& c : candidates) {
    auto a = index.find(c.first);
    auto b = index.find(c.second);
    if (a == index.end() || b == index.end()) continue;
    sets.unite(a->second, b->second);
  }

  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < entities.size(); ++i) members[sets.find(i)].push_back(i);

  for (const auto& [root, group] : members) {
    // most fields wins; ties go to the smallest key, which sorts first
    std::size_t rep = group.front();
    for (std::size_t i : group) {
      if (entities[i]->fields.size() > entities[rep]->fields.size()) rep = i;
    }
    const EntityKey rep_key = entities[rep]->key();
    res.entities_.push_back(rep_key);
    if (group.size() < 2) continue;
    std::vector<EntityKey> keys{rep_key};
    for (std::size_t i : group) {
      if (i == rep) continue;
      keys.push_back(entities[i]->key());
      res.entity_map_.emplace(entities[i]->key(), rep_key);
    }
    res.groups_.push_back(std::move(keys));
  }
  std::sort(res.entities_.begin(), res.entities_.end());
  std::sort(res.groups_.begin(), res.groups_.end());

  std::map<std::pair<EntityKey, EntityKey>, std::vector<const Relationship*>> classes;
  for (const DataEntity* e : entities) {
    for (const auto& r : e->relationships) {
      ++res.total_relationships_;
      classes[{res.map_entity(r.source), res.map_entity(r.destination)}].push_back(&r);
    }
  }
  for (auto& [endpoints, group] : classes) {
    std::sort(group.begin(), group.end(), [](const Relationship* a, const Relationship* b) { return *a < *b; });
    // prefer a via-field the representative itself declares
    const Relationship* chosen = group.front();
    for (const Relationship* r : group) {
      if (r->source == endpoints.first) {
        chosen = r;
        break;
      }
    }
    Relationship image{endpoints.first, endpoints.second, chosen->via_field};
    res.relationships_.push_back(image);
    res.relationship_images_.emplace(endpoints, std::move(image));
  }
  std::sort(res.relationships_.begin(), res.relationships_.end());
  return res;
}

ContextMap build_context_map(const SystemModel& system, const MergeResolution& resolution) {
  ContextMap map;
  std::map<EntityKey, std::vector<EntityKey>> absorbed;
  for (const auto& g : resolution.groups()) absorbed[g.front()] = g;
  for (const auto& key : resolution.merged_entities()) {
    const DataEntity* entity = system.find_entity(key);
    if (entity == nullptr) continue;
    ContextEntity ce{*entity, {}};
    ce.entity.relationships.clear();
    if (auto it = absorbed.find(key); it != absorbed.end()) {
      ce.absorbed = it->second;
    } else {
      ce.absorbed = {key};
    }
    map.entities.push_back(std::move(ce));
  }
  map.relationships = resolution.merged_relationships();
  return map;
}

std::vector<std::string> merge_audit(const MergeResolution& resolution) {
  std::vector<std::string> out;
  for (const auto& g : resolution.groups()) {
    for (std::size_t i = 1; i < g.size(); ++i) out.push_back(to_string(g[0]) + " <= " + to_string(g[i]));
  }
  return out;
}

}  // namespace archrecon
