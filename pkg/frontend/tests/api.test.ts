import { beforeEach, describe, expect, it, vi, Mock } from 'vitest';
import { ApiClient, ApiRequestError } from '../src/api';

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

let fetchSpy: Mock;
let client: ApiClient;

beforeEach(() => {
  fetchSpy = vi.fn(async () => jsonResponse({ queued: true, position: 1, version: 2 }));
  client = new ApiClient('http://api', fetchSpy as unknown as typeof fetch);
});

describe('request shapes', () => {
  it('GET /api/state', async () => {
    fetchSpy.mockResolvedValueOnce(jsonResponse({ version: 1 }));
    await client.state();
    expect(fetchSpy).toHaveBeenCalledTimes(1);
    expect(fetchSpy.mock.calls[0][0]).toBe('http://api/api/state');
  });

  it('density keeps the raw body bytes next to the parsed payload', async () => {
    const raw = '{"dimension": 1,\n "breakpoints": [0.0, 1.0], "values": [1.0]}';
    fetchSpy.mockResolvedValueOnce(new Response(raw, { status: 200 }));
    const result = await client.density(1);
    expect(fetchSpy.mock.calls[0][0]).toBe('http://api/api/density/1');
    expect(result.raw).toBe(raw);
    expect(result.payload.dimension).toBe(1);
  });

  it('density with an output lands in the query string', async () => {
    fetchSpy.mockResolvedValueOnce(jsonResponse({ dimension: 1 }));
    await client.density(1, 3);
    expect(fetchSpy.mock.calls[0][0]).toBe('http://api/api/density/1?output=3');
  });

  it('cumulative, samples, and bootstrap routes', async () => {
    fetchSpy.mockImplementation(async () => jsonResponse({}));
    await client.cumulative(2, 1);
    await client.samples(1, 3, 500);
    await client.bootstrap(2, 1, 50, 7);
    const urls = fetchSpy.mock.calls.map((c) => c[0]);
    expect(urls).toEqual([
      'http://api/api/cumulative/2?output=1',
      'http://api/api/samples?dims=1,3&limit=500',
      'http://api/api/bootstrap/2?output=1&replicates=50&seed=7',
    ]);
  });

  it('trims a trailing slash on the base URL', async () => {
    const c = new ApiClient('http://api/', fetchSpy as unknown as typeof fetch);
    fetchSpy.mockResolvedValueOnce(jsonResponse({}));
    await c.state();
    expect(fetchSpy.mock.calls[0][0]).toBe('http://api/api/state');
  });
});

describe('every control issues exactly one request', () => {
  it('alpha posts the JSON body once', async () => {
    await client.setAlpha(0.7);
    expect(fetchSpy).toHaveBeenCalledTimes(1);
    const [url, init] = fetchSpy.mock.calls[0];
    expect(url).toBe('http://api/api/control/alpha');
    expect(init.method).toBe('POST');
    expect(init.headers['Content-Type']).toBe('application/json');
    expect(init.body).toBe('{"value":0.7}');
  });

  it('run posts the batch count once', async () => {
    await client.run(3);
    expect(fetchSpy).toHaveBeenCalledTimes(1);
    expect(fetchSpy.mock.calls[0][0]).toBe('http://api/api/control/run');
    expect(fetchSpy.mock.calls[0][1].body).toBe('{"batches":3}');
  });

  it('pause and resume post without a body', async () => {
    await client.pause();
    await client.resume();
    expect(fetchSpy).toHaveBeenCalledTimes(2);
    expect(fetchSpy.mock.calls[0][0]).toBe('http://api/api/control/pause');
    expect(fetchSpy.mock.calls[1][0]).toBe('http://api/api/control/resume');
    expect(fetchSpy.mock.calls[0][1].body).toBeUndefined();
  });

  it('override posts dim, breakpoints, and values once', async () => {
    await client.setOverride(2, [0, 0.5, 1], [1, 3]);
    expect(fetchSpy).toHaveBeenCalledTimes(1);
    expect(fetchSpy.mock.calls[0][0]).toBe('http://api/api/control/override');
    expect(JSON.parse(fetchSpy.mock.calls[0][1].body)).toEqual({
      dim: 2,
      breakpoints: [0, 0.5, 1],
      values: [1, 3],
    });
  });

  it('clearing an override is a single DELETE', async () => {
    await client.clearOverride(2);
    expect(fetchSpy).toHaveBeenCalledTimes(1);
    expect(fetchSpy.mock.calls[0][0]).toBe('http://api/api/control/override/2');
    expect(fetchSpy.mock.calls[0][1].method).toBe('DELETE');
  });

  it('acknowledgments come back parsed', async () => {
    const ack = await client.setAlpha(1);
    expect(ack).toEqual({ queued: true, position: 1, version: 2 });
  });
});

describe('error mapping', () => {
  it('string detail becomes the message', async () => {
    fetchSpy.mockResolvedValueOnce(jsonResponse({ detail: 'dimension 9 out of range 1..3' }, 404));
    const err = await client.density(9).catch((e) => e);
    expect(err).toBeInstanceOf(ApiRequestError);
    expect(err.status).toBe(404);
    expect(err.message).toBe('dimension 9 out of range 1..3');
  });

  it('field issues join into the message and map per field', async () => {
    const detail = [{ loc: ['body', 'value'], msg: 'value is not a valid float' }];
    fetchSpy.mockResolvedValueOnce(jsonResponse({ detail }, 400));
    const err: ApiRequestError = await client.setAlpha(NaN).catch((e) => e);
    expect(err.message).toBe('body.value: value is not a valid float');
    expect(err.fieldErrors().get('value')).toBe('value is not a valid float');
  });

  it('non-JSON error bodies fall back to the status code', async () => {
    fetchSpy.mockResolvedValueOnce(new Response('gateway exploded', { status: 502 }));
    const err = await client.state().catch((e) => e);
    expect(err.message).toBe('HTTP 502');
  });

  it('network failures propagate to the caller', async () => {
    fetchSpy.mockRejectedValueOnce(new TypeError('fetch failed'));
    await expect(client.state()).rejects.toThrow('fetch failed');
  });
});
