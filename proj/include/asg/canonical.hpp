#pragma once

#include "asg/encoder.hpp"
#include "asg/graph.hpp"

#include <string>
#include <string_view>

namespace asg {

/// Node lines `id|class|name|type` in DFS order, then edge lines
/// `KIND|src|dst` sorted by (kind, src, dst).
struct CanonicalForm {
    std::string text;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const EncodedGraph& g);

/// Canonical form of the nameless 3-property encoding of `source`.
CanonicalForm canonical_asg(std::string_view source, Variant variant = Variant::Asg,
                            const BuildOptions& opts = {});

/// Equal up to an injective renaming of declared variables and parameters.
/// `variant` must be ASG or ASG_PLUS.
bool alpha_equivalent(std::string_view src_a, std::string_view src_b, Variant variant = Variant::Asg,
                      const BuildOptions& opts = {});

/// Pretty-prints MiniC for an ASG. Declarations get fresh names v0, v1, ...
/// in DFS order and erased uses follow their NAME_DEP edge; erased literals
/// become type defaults. Throws MalformedAsg when an erased ident has no
/// NAME_DEP edge.
std::string reconstruct(const CodeGraph& g);

} // namespace asg
