"""Smoke test for the pybnpg extension.

Build and install first, e.g.:

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/pybnpg-*.whl
"""

import pybnpg


def path_game():
    # g shared by all players, truncated to deg + 2 entries
    g = [4.5, 6.0, 9.5, 10.0]
    return pybnpg.Game(
        3,
        [(0, 1), (1, 2)],
        [1.0, 2.0, 3.0],
        [g[:3], g, g[:3]],
        homogeneity="homogeneous",
    )


def main():
    game = path_game()
    assert game.n == 3
    assert game.edges == [(0, 1), (1, 2)]
    assert not any(game.is_psne(format(m, "03b")) for m in range(8))
    assert game.enumerate_psne() == []
    assert game.max_epsilon("000", normalized=False) == 0.5
    assert game.max_epsilon([1, 1, 1], normalized=False) == 1.5
    assert game.social_welfare("111") == 23.0
    assert game.utility("111", 0) == 8.5

    report = game.solve()
    assert report.method == "tree" and report.status == "no_psne", report
    assert report.exit_code == 1

    approx = game.solve(method="heuristic", seed=3, normalized=False)
    assert approx.status == "approx_psne"
    assert approx.epsilon == game.max_epsilon(approx.profile, normalized=False)

    ba = pybnpg.generate("barabasi_albert", 200, gamma=1.0, seed=5)
    result = ba.solve(method="heuristic", seed=1)
    assert result.status == "psne", result
    assert ba.is_psne(result.profile)
    again = pybnpg.generate("barabasi_albert", 200, gamma=1.0, seed=5)
    assert again.to_toml() == ba.to_toml()
    assert pybnpg.Game.from_toml(ba.to_toml()).tables == ba.tables

    try:
        game.is_psne("01")
    except ValueError:
        pass
    else:
        raise AssertionError("short profile accepted")

    print("pybnpg smoke test passed")


if __name__ == "__main__":
    main()
