/* HTML rendering of the matrix view model (no framework, string templates). */

import { formatValue, MatrixViewModel, Cell } from "./viewmodel.js";

function escapeHtml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function cellContent(cell: Cell, connected: boolean): string {
  switch (cell.state) {
    case "diagonal":
      return "1";
    case "given":
      return `<input class="judgment" data-i="${cell.i}" data-j="${cell.j}" value="${formatValue(cell.value)}">`;
    case "filled": {
      if (cell.value !== null) {
        return `<span class="fill">${formatValue(cell.value)}</span>`;
      }
      return (
        `<span class="fill fill-llsm">${formatValue(cell.llsmValue)}</span>` +
        ` / <span class="fill fill-ev">${formatValue(cell.evValue)}</span>`
      );
    }
    case "missing":
      return connected
        ? ""
        : `<input class="judgment" data-i="${cell.i}" data-j="${cell.j}" value="">`;
  }
}

function cellClasses(cell: Cell, vm: MatrixViewModel): string {
  const classes = ["cell", `state-${cell.state}`];
  if (cell.isMaxDivergence) classes.push("max-divergence");
  if (cell.divergence > 0) classes.push("divergent");
  const s = vm.suggestion;
  if (s && ((cell.i === s[0] && cell.j === s[1]) || (cell.i === s[1] && cell.j === s[0]))) {
    classes.push("suggested");
  }
  return classes.join(" ");
}

function weightBars(label: string, bars: { alternative: number; weight: number }[]): string {
  if (bars.length === 0) return "";
  const rows = bars
    .map(
      (b) =>
        `<div class="bar-row"><span class="bar-label">${b.alternative}</span>` +
        `<div class="bar" style="width:${(b.weight * 100).toFixed(1)}%"></div>` +
        `<span class="bar-value">${b.weight.toFixed(4)}</span></div>`,
    )
    .join("");
  return `<div class="weights"><h3>${label}</h3>${rows}</div>`;
}

export function renderView(vm: MatrixViewModel): string {
  const banner = vm.connected
    ? vm.coincide === null
      ? ""
      : vm.coincide
        ? `<div class="banner coincide">methods coincide</div>`
        : `<div class="banner diverge">methods diverge: max |log(b/c)| = ${vm.maxDivergence?.toExponential(3)} at (${vm.maxPosition?.join(",")})</div>`
    : `<div class="banner disconnected">disconnected: components ${vm.components
        .map((c) => `{${c.join(",")}}`)
        .join(" ")}</div>`;

  const grid = vm.cells
    .map(
      (row) =>
        `<tr>${row
          .map((cell) => `<td class="${cellClasses(cell, vm)}">${cellContent(cell, vm.connected)}</td>`)
          .join("")}</tr>`,
    )
    .join("");

  const stats =
    vm.connected && vm.lambdaMax !== null
      ? `<div class="stats">lambda_max = ${vm.lambdaMax.toFixed(4)}` +
        `  CI = ${vm.ci?.toFixed(4)}  GCI = ${vm.gci?.toFixed(4)}</div>`
      : "";

  const warnings = vm.warnings.length
    ? `<ul class="warnings">${vm.warnings.map((w) => `<li>${escapeHtml(w)}</li>`).join("")}</ul>`
    : "";

  return (
    banner +
    `<table class="matrix">${grid}</table>` +
    stats +
    (vm.connected ? weightBars("least squares", vm.llsmWeights) + weightBars("eigenvalue", vm.evWeights) : "") +
    warnings
  );
}
