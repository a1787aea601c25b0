"""Shared test fixtures: a compact scenario factory."""

from ris_sei.model import ChannelParams, RisConfig, RisState, ScenarioConfig


def make_scenario(
    n=4,
    amplitudes=None,
    phases=None,
    state=RisState.ON,
    var_ar=0.5,
    var_rb=0.5,
    var_a=1.0,
    var_e=0.25,
    noise_var=0.8,
    L=64,
    seed=1234,
    **kwargs,
):
    return ScenarioConfig(
        ris=RisConfig(
            n_elements=n,
            amplitudes=amplitudes if amplitudes is not None else (1.0,) * n,
            phases=phases if phases is not None else (0.0,) * n,
            state=state,
        ),
        channel=ChannelParams(var_ar, var_rb, var_a, var_e, noise_var),
        samples_per_block=L,
        seed=seed,
        **kwargs,
    )
