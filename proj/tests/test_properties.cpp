#include <catch2/catch_amalgamated.hpp>

#include "properties.hpp"

namespace {

void requireClean(const std::optional<std::string>& failure) {
  if (failure) FAIL(*failure);
}

}  // namespace

TEST_CASE("invariant factor products match minor gcds", "[property]") {
  requireClean(property::smithDivisorLaw(property::kDefaultInstances,
                                         property::kDefaultSeed + 1));
}

TEST_CASE("integer kernels are saturated and of full corank", "[property]") {
  requireClean(property::kernelSaturation(property::kDefaultInstances,
                                          property::kDefaultSeed + 2));
}

TEST_CASE("saturation is extensive, idempotent, and index-detecting",
          "[property]") {
  requireClean(property::saturateIdempotence(property::kDefaultInstances,
                                             property::kDefaultSeed + 3));
}

TEST_CASE("serialization round-trips random valid complexes", "[property]") {
  requireClean(property::serializationRoundTrip(property::kDefaultInstances,
                                                property::kDefaultSeed + 4));
}

TEST_CASE("compatible classes pair to zero against boundary images",
          "[property]") {
  requireClean(property::pairingDescent(property::kDefaultInstances,
                                        property::kDefaultSeed + 5));
}

TEST_CASE("double curve orientation does not affect the groups",
          "[property]") {
  requireClean(property::orientationInvariance(property::kDefaultInstances,
                                               property::kDefaultSeed + 6));
}

TEST_CASE("the combined property run is green", "[property]") {
  auto run = property::runAllPropertySuites();
  for (const auto& f : run.failures) INFO(f);
  REQUIRE(run.ok);
}
