import init, { shift_linearize, fixed_space_profile, parity } from "./pkg/polyaut_wasm.js";

function bind(id, run, render) {
  const form = document.getElementById(id);
  const out = form.querySelector("[data-out]");
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    out.classList.remove("error");
    try {
      out.textContent = render(JSON.parse(run(data)));
    } catch (err) {
      out.classList.add("error");
      out.textContent = String(err.message ?? err);
    }
  });
}

await init();

bind(
  "shift",
  (d) => shift_linearize(d.get("field"), d.get("map"), d.get("lambda")),
  (r) =>
    r.degenerate
      ? `c = ${r.conjugationScalar}: degenerate, L commutes with exp(λD)\nL·exp(λD) = ${r.shiftedMap}`
      : [
          `c = ${r.conjugationScalar}`,
          `μ = ${r.conjugator}`,
          `L·exp(λD) = ${r.shiftedMap}`,
          `exp(-μD)·L·exp(λD)·exp(μD) = ${r.conjugatedMap}`,
          `verified: ${r.verified}`,
        ].join("\n"),
);

bind(
  "profile",
  (d) => fixed_space_profile(d.get("field"), d.get("map"), Number(d.get("dmax"))),
  (r) => `F = ${r.map}\nprofile: (${r.profile.join(", ")})\nbasis:\n  ${r.basis.join("\n  ")}`,
);

bind(
  "parity",
  (d) =>
    parity(
      Number(d.get("q")),
      Number(d.get("n")),
      Number(d.get("samples")),
      Number(d.get("seed")),
      d.get("fiberwise") === "on",
    ),
  (r) =>
    [
      `GF(${r.q})^${r.n}: ${r.evenCount} even, ${r.oddCount} odd`,
      ...r.witnesses.map((w) => `odd: ${w}`),
      r.flagged ? "WARNING: odd permutation over a field of order 2^m, m >= 2" : "",
    ].join("\n"),
);
