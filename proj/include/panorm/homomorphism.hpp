#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "stabilizer_chain.hpp"

namespace panorm {

/// A homomorphism from a permutation group, given by the images of the
/// source generators.
///
/// Evaluation sifts through a chain of the graph group
/// { (g, phi(g)) } whose base lies in the source points; the tag carried
/// through the sift is the image. Lifting uses the mirrored chain of
/// { (phi(g), g) } with base in the target points.
class GroupHom {
 public:
  GroupHom(PermGroup source, std::size_t target_degree, std::vector<Permutation> images)
      : source_(std::move(source)),
        target_degree_(target_degree),
        images_(std::move(images)),
        cache_(std::make_shared<Cache>()) {
    if (images_.size() != source_.generators().size())
      throw Error("homomorphism needs one image per source generator");
    for (const auto& im : images_)
      if (im.degree() != target_degree_) throw Error("image degree mismatch");
  }

  const PermGroup& source() const noexcept { return source_; }
  std::size_t target_degree() const noexcept { return target_degree_; }
  const std::vector<Permutation>& images() const& noexcept { return images_; }
  std::vector<Permutation> images() && { return std::move(images_); }

  Permutation operator()(const Permutation& g) const {
    if (g.degree() != source_.degree()) throw Error("hom_eval: degree mismatch");
    auto r = graph_chain().sift({g, Permutation::identity(target_degree_)});
    if (r.level != graph_chain().depth() || !r.residue.perm.is_identity())
      throw Error("hom_eval: element is not in the source group");
    return r.residue.tag.inverse();
  }

  PermGroup image() const {
    std::call_once(cache_->image_once, [this] {
      cache_->image = std::make_unique<PermGroup>(target_degree_, images_);
    });
    return *cache_->image;
  }

  /// Some preimage of u, or nullopt if u is not in the image.
  std::optional<Permutation> lift(const Permutation& u) const {
    if (u.degree() != target_degree_) throw Error("lift: degree mismatch");
    const auto& chain = lift_chain();
    auto r = chain.sift({u, Permutation::identity(source_.degree())});
    if (r.level != chain.depth() || !r.residue.perm.is_identity()) return std::nullopt;
    return r.residue.tag.inverse();
  }

  /// Kernel elements found while building the lifting chain. They generate
  /// the kernel together with the normal closure; callers that know the
  /// kernel should use that instead.
  const std::vector<TaggedPermutation>& lift_kernel_witnesses() const {
    return lift_chain().tag_kernel();
  }

  /// True iff the generator images define a homomorphism: the graph group
  /// meets the target only trivially. Runs a full deterministic
  /// Schreier-Sims pass on the graph group.
  bool well_defined() const {
    std::vector<TaggedPermutation> gens;
    for (std::size_t i = 0; i < images_.size(); ++i)
      gens.push_back({source_.generators()[i], images_[i]});
    auto chain = TaggedChain::build(
        source_.degree(),
        {Permutation::identity(source_.degree()), Permutation::identity(target_degree_)}, gens,
        {.randomized = false});
    return chain.tag_kernel().empty();
  }

 private:
  struct Cache {
    std::once_flag graph_once, lift_once, image_once;
    std::unique_ptr<TaggedChain> graph, lift;
    std::unique_ptr<PermGroup> image;
  };

  const TaggedChain& graph_chain() const {
    std::call_once(cache_->graph_once, [this] {
      std::vector<TaggedPermutation> gens;
      for (std::size_t i = 0; i < images_.size(); ++i)
        gens.push_back({source_.generators()[i], images_[i]});
      ChainOptions opts;
      opts.known_order = source_.order();
      cache_->graph = std::make_unique<TaggedChain>(TaggedChain::build(
          source_.degree(),
          {Permutation::identity(source_.degree()), Permutation::identity(target_degree_)},
          gens, opts));
    });
    return *cache_->graph;
  }

  const TaggedChain& lift_chain() const {
    std::call_once(cache_->lift_once, [this] {
      std::vector<TaggedPermutation> gens;
      for (std::size_t i = 0; i < images_.size(); ++i)
        gens.push_back({images_[i], source_.generators()[i]});
      cache_->lift = std::make_unique<TaggedChain>(TaggedChain::build(
          target_degree_,
          {Permutation::identity(target_degree_), Permutation::identity(source_.degree())},
          gens));
    });
    return *cache_->lift;
  }

  PermGroup source_;
  std::size_t target_degree_;
  std::vector<Permutation> images_;
  std::shared_ptr<Cache> cache_;
};

inline Permutation hom_eval(const GroupHom& phi, const Permutation& g) { return phi(g); }

/// Preimage of u <= image(phi), generated by the kernel generators and one
/// lift per generator of u.
inline PermGroup preimage(const GroupHom& phi, std::span<const Permutation> kernel_generators,
                          const PermGroup& u) {
  std::vector<Permutation> gens(kernel_generators.begin(), kernel_generators.end());
  for (const auto& x : u.generators()) {
    auto lifted = phi.lift(x);
    if (!lifted) throw Error("preimage: subgroup is not contained in the image");
    gens.push_back(std::move(*lifted));
  }
  return PermGroup(phi.source().degree(), std::move(gens));
}

/// Randomized check of phi(xy) = phi(x) phi(y).
template <class Rng>
bool check_homomorphism(const GroupHom& phi, Rng& rng, std::size_t samples = 100) {
  for (std::size_t i = 0; i < samples; ++i) {
    auto x = random_element(phi.source(), rng);
    auto y = random_element(phi.source(), rng);
    if (phi(x * y) != phi(x) * phi(y)) return false;
  }
  return true;
}

}  // namespace panorm
