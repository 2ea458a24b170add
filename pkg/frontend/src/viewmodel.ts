/* View model: completion payload -> renderable grid.
 *
 * The UI performs no numerics beyond formatting; every displayed value is
 * copied from a service payload field. */

import type { CompletionPayload, Position } from "./api.js";

export type CellState = "diagonal" | "given" | "filled" | "missing";

export interface Cell {
  i: number;
  j: number;
  state: CellState;
  /** Display value for given/diagonal cells and single-method fills. */
  value: number | null;
  /** Per-method fill values when both methods are shown and they differ. */
  llsmValue: number | null;
  evValue: number | null;
  divergence: number;
  isMaxDivergence: boolean;
  editable: boolean;
}

export interface WeightBar {
  alternative: number;
  weight: number;
}

export interface MatrixViewModel {
  order: number;
  connected: boolean;
  cells: Cell[][];
  llsmWeights: WeightBar[];
  evWeights: WeightBar[];
  lambdaMax: number | null;
  ci: number | null;
  gci: number | null;
  coincide: boolean | null;
  maxDivergence: number | null;
  maxPosition: Position | null;
  components: number[][];
  warnings: string[];
  suggestion: Position | null;
}

function upper(i: number, j: number): Position {
  return i < j ? [i, j] : [j, i];
}

function tripleMap(entries: [number, number, number][] | undefined): Map<string, number> {
  const map = new Map<string, number>();
  for (const [i, j, v] of entries ?? []) map.set(`${i},${j}`, v);
  return map;
}

export function buildViewModel(
  payload: CompletionPayload,
  suggestion: Position | null = null,
): MatrixViewModel {
  const n = payload.order;
  const given = tripleMap(payload.given);
  const llsmFilled = tripleMap(payload.llsm?.filled);
  const evFilled = tripleMap(payload.ev?.filled);
  const divergences = tripleMap(payload.comparison?.per_entry);
  const maxPosition = payload.comparison?.max_position ?? null;
  const coincide = payload.comparison?.coincide ?? null;

  const cells: Cell[][] = [];
  for (let i = 1; i <= n; i++) {
    const row: Cell[] = [];
    for (let j = 1; j <= n; j++) {
      const [ui, uj] = upper(i, j);
      const key = `${ui},${uj}`;
      const invert = i > j;
      const flip = (v: number | null) => (v === null ? null : invert ? 1 / v : v);
      let cell: Cell;
      if (i === j) {
        cell = {
          i, j, state: "diagonal", value: 1, llsmValue: null, evValue: null,
          divergence: 0, isMaxDivergence: false, editable: false,
        };
      } else if (given.has(key)) {
        cell = {
          i, j, state: "given", value: flip(given.get(key)!), llsmValue: null,
          evValue: null, divergence: 0, isMaxDivergence: false, editable: true,
        };
      } else if (llsmFilled.has(key) || evFilled.has(key)) {
        const llsmValue = flip(llsmFilled.get(key) ?? null);
        const evValue = flip(evFilled.get(key) ?? null);
        const divergence = divergences.get(key) ?? 0;
        const singleValue =
          coincide === true || llsmValue === null || evValue === null
            ? llsmValue ?? evValue
            : null;
        cell = {
          i, j, state: "filled", value: singleValue, llsmValue, evValue,
          divergence,
          isMaxDivergence:
            coincide === false &&
            maxPosition !== null && maxPosition[0] === ui && maxPosition[1] === uj,
          editable: true,
        };
      } else {
        cell = {
          i, j, state: "missing", value: null, llsmValue: null, evValue: null,
          divergence: 0, isMaxDivergence: false, editable: true,
        };
      }
      row.push(cell);
    }
    cells.push(row);
  }

  const bars = (weights: number[] | undefined): WeightBar[] =>
    (weights ?? []).map((weight, idx) => ({ alternative: idx + 1, weight }));

  const primary = payload.ev ?? payload.llsm ?? null;
  return {
    order: n,
    connected: payload.connected,
    cells,
    llsmWeights: bars(payload.llsm?.weights),
    evWeights: bars(payload.ev?.weights),
    lambdaMax: primary?.lambda_max ?? null,
    ci: primary?.ci ?? null,
    gci: payload.llsm?.gci ?? primary?.gci ?? null,
    coincide,
    maxDivergence: payload.comparison?.max_divergence ?? null,
    maxPosition,
    components: payload.components ?? [],
    warnings: payload.warnings,
    suggestion,
  };
}

/** Display precision: 4 decimals, matching the reported fill precision. */
export function formatValue(value: number | null): string {
  return value === null ? "" : value.toFixed(4);
}
