import { readFileSync } from 'node:fs';
import { resolve } from 'node:path';

import { describe, expect, it } from 'vitest';

import { layoutGraph, renderGraph } from '../src/graphWidget';
import type { GraphPayload } from '../src/types';

// vitest runs with cwd = frontend/; the shipped graphs live beside the engine fixtures
const SAMPLE_PATH = resolve(process.cwd(), '../fixtures/demo/graphs_sample.json');
const SAMPLE_GRAPHS: GraphPayload[] = JSON.parse(readFileSync(SAMPLE_PATH, 'utf-8'));

describe('graph widget rendering', () => {
    it('ships ten fixture graphs', () => {
        expect(SAMPLE_GRAPHS.length).toBe(10);
    });

    for (const [i, payload] of SAMPLE_GRAPHS.entries()) {
        it(`renders every node and edge of fixture graph ${i} exactly once`, () => {
            const container = document.createElement('div');
            renderGraph(container, payload);
            const nodeElements = container.querySelectorAll('.graph-node');
            const edgeElements = container.querySelectorAll('.graph-edge');
            expect(nodeElements.length).toBe(payload.nodes.length);
            expect(edgeElements.length).toBe(payload.edges.length);
            const renderedIds = Array.from(nodeElements).map(
                (el) => (el as HTMLElement).getAttribute('data-node-id'),
            );
            expect(new Set(renderedIds).size).toBe(renderedIds.length);
            expect(new Set(renderedIds)).toEqual(new Set(payload.nodes.map((n) => n.id)));
        });
    }

    it('uses the engine color roles verbatim', () => {
        const payload = SAMPLE_GRAPHS.find((g) => g.nodes.length > 0)!;
        const byRole = new Map(payload.nodes.map((n) => [n.role, n.color]));
        expect(byRole.get('parent')).toBe('blue');
        const container = document.createElement('div');
        renderGraph(container, payload);
        for (const node of payload.nodes) {
            const el = container.querySelector(`[data-node-id="${node.id}"]`)!;
            expect(el.getAttribute('class')).toContain(`role-${node.role}`);
        }
    });

    it('pins a lone parent at the center and keeps layouts deterministic', () => {
        const payload = SAMPLE_GRAPHS.find(
            (g) => g.nodes.filter((n) => n.role === 'parent').length === 1,
        )!;
        const layoutA = layoutGraph(payload);
        const layoutB = layoutGraph(payload);
        const parent = payload.nodes.find((n) => n.role === 'parent')!;
        expect(layoutA.positions.get(parent.id)).toEqual({
            x: layoutA.width / 2,
            y: layoutA.height / 2,
        });
        for (const [id, point] of layoutA.positions) {
            expect(layoutB.positions.get(id)).toEqual(point);
        }
    });
});
