//! Shared fixture games for unit tests.

use crate::games::BaseGame;
use crate::netgame::Network;
use crate::reliability::ReliabilityGame;

/// Five-edge bridge network: a: s->u, b: u->t, c: s->w, d: w->t, e: u->w.
/// Minimal s-t edge sets are {a,b}, {c,d}, {a,e,d}.
pub fn bridge_network() -> Network {
    Network::new(
        vec!["s".into(), "u".into(), "w".into(), "t".into()],
        vec![
            ("a".into(), "s".into(), "u".into()),
            ("b".into(), "u".into(), "t".into()),
            ("c".into(), "s".into(), "w".into()),
            ("d".into(), "w".into(), "t".into()),
            ("e".into(), "u".into(), "w".into()),
        ],
        "s",
        "t",
    )
    .unwrap()
}

/// Bridge network with survival (a,b,c,d,e) = (0.5, 0.1, 0.1, 0.5, 0.5).
pub fn bridge_extension() -> ReliabilityGame<BaseGame> {
    ReliabilityGame::new(
        bridge_network().into_base_game(),
        vec![0.5, 0.1, 0.1, 0.5, 0.5],
    )
    .unwrap()
}

/// Bridge network with the bridge edge e removed, same survival on a..d.
pub fn bridge_without_e_extension() -> ReliabilityGame<BaseGame> {
    let net = Network::new(
        vec!["s".into(), "u".into(), "w".into(), "t".into()],
        vec![
            ("a".into(), "s".into(), "u".into()),
            ("b".into(), "u".into(), "t".into()),
            ("c".into(), "s".into(), "w".into()),
            ("d".into(), "w".into(), "t".into()),
        ],
        "s",
        "t",
    )
    .unwrap();
    ReliabilityGame::new(net.into_base_game(), vec![0.5, 0.1, 0.1, 0.5]).unwrap()
}

/// Three serial edges s->x->y->t plus a direct edge s->t, each surviving
/// with probability 1/2.
pub fn serial_extension() -> ReliabilityGame<BaseGame> {
    let net = Network::from_indices(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)], 0, 3).unwrap();
    ReliabilityGame::new(net.into_base_game(), vec![0.5; 4]).unwrap()
}
