#pragma once

#include "archrecon/model.hpp"
#include "archrecon/profile.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace archrecon {

/// Lexical name similarity in [0, 1]: type suffixes (Dto, Entity, ...) are
/// stripped, then token-set Jaccard is averaged with normalized edit
/// similarity. Case-insensitive and symmetric.
double name_similarity(std::string_view a, std::string_view b);

/// Jaccard over (lowercased field name, canonical type) pairs.
double field_compatibility(const DataEntity& a, const DataEntity& b,
                           const LanguageProfile& profile = spring_java_profile());

/// True when the smaller non-empty field set is contained in the other.
bool field_subset(const DataEntity& a, const DataEntity& b,
                  const LanguageProfile& profile = spring_java_profile());

struct MergeThresholds {
  double name = 0.85;
  double field = 0.5;
};

struct CandidatePair {
  EntityKey first;   ///< first < second
  EntityKey second;
  double name_score = 0;
  double field_score = 0;
};

/// Unordered entity pairs from different microservices that look like the
/// same concept. Pairs come out sorted.
std::vector<CandidatePair> find_merge_candidates(const SystemModel& system, MergeThresholds thresholds,
                                                 const LanguageProfile& profile = spring_java_profile());

/// Outcome of entity merging: the total maps f_d (entities) and f_r
/// (relationships) plus their images.
class MergeResolution {
 public:
  /// f_d. Entities outside every group map to themselves.
  EntityKey map_entity(const EntityKey& entity) const;
  /// f_r. The image joins the mapped endpoints.
  Relationship map_relationship(const Relationship& relationship) const;

  const std::vector<EntityKey>& merged_entities() const { return entities_; }
  const std::vector<Relationship>& merged_relationships() const { return relationships_; }
  /// Groups of two or more entities; the representative comes first.
  const std::vector<std::vector<EntityKey>>& groups() const { return groups_; }

  std::size_t total_entities() const { return total_entities_; }
  std::size_t total_relationships() const { return total_relationships_; }
  std::size_t merge_count() const;

 private:
  friend MergeResolution build_resolution(const SystemModel&, const std::vector<CandidatePair>&);

  std::map<EntityKey, EntityKey> entity_map_;
  std::map<std::pair<EntityKey, EntityKey>, Relationship> relationship_images_;
  std::vector<EntityKey> entities_;
  std::vector<Relationship> relationships_;
  std::vector<std::vector<EntityKey>> groups_;
  std::size_t total_entities_ = 0;
  std::size_t total_relationships_ = 0;
};

/// Union-find over the candidate pairs. The representative of a group is the
/// member with the most fields, ties going to the smallest (owner, name).
MergeResolution build_resolution(const SystemModel& system, const std::vector<CandidatePair>& candidates);

struct ContextEntity {
  DataEntity entity;               ///< the representative as extracted
  std::vector<EntityKey> absorbed;  ///< every member, representative included
};

/// Holistic post-merge data model.
struct ContextMap {
  std::vector<ContextEntity> entities;
  std::vector<Relationship> relationships;
};

ContextMap build_context_map(const SystemModel& system, const MergeResolution& resolution);

/// `<rep> <= <member>` per absorbed entity.
std::vector<std::string> merge_audit(const MergeResolution& resolution);

}  // namespace archrecon
