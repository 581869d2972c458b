#ifndef EPISENSE_ASSETS_HPP
#define EPISENSE_ASSETS_HPP

namespace episense::assets {

/// Bundled sub-event causality network (SARS-era, transcribed from the
/// published figure; best-effort and swappable via --graph).
const char* helbing_sars_json();

} // namespace episense::assets

#endif
