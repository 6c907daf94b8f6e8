//! Generates the frozen test corpora checked into tests/data:
//!
//!   uper-corpus   -> uper_oracle.json   (message values + UPER bytes from rasn,
//!                    an independent ASN.1 implementation)
//!   pcap-interop  -> interop_rust.pcap + interop_rust.json (capture written by
//!                    the pcap-file crate, plus its record listing)
//!   pcap-dump F   -> JSON record listing of an existing capture, for freezing
//!                    an external view of a toolkit-written golden file
//!
//! Regeneration is deterministic (fixed ChaCha20 seed). These artifacts are
//! generated once and committed; the C++ tests only read them.

use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use rasn::prelude::*;
use serde_json::{json, Value};
use std::io::Write;

#[derive(AsnType, Decode, Encode, Clone, Debug, PartialEq)]
struct NodeXY {
    #[rasn(value("-32768..=32767"))]
    x: i32,
    #[rasn(value("-32768..=32767"))]
    y: i32,
}

#[derive(AsnType, Decode, Encode, Clone, Copy, Debug, PartialEq)]
#[rasn(enumerated)]
enum LaneKind {
    Vehicle,
    Crosswalk,
}

#[derive(AsnType, Decode, Encode, Clone, Debug, PartialEq)]
struct Lane {
    #[rasn(value("0..=255"))]
    lane_id: u8,
    lane_type: LaneKind,
    #[rasn(size("2..=63"))]
    nodes: Vec<NodeXY>,
}

#[derive(AsnType, Decode, Encode, Clone, Debug, PartialEq)]
struct RefPoint {
    #[rasn(value("-900000000..=900000001"))]
    lat: i64,
    #[rasn(value("-1799999999..=1800000001"))]
    lon: i64,
    #[rasn(value("-4096..=61439"))]
    elev: i32,
}

#[derive(AsnType, Decode, Encode, Clone, Debug, PartialEq)]
struct MapData {
    #[rasn(value("0..=65535"))]
    intersection_id: u16,
    ref_point: RefPoint,
    #[rasn(value("0..=32767"))]
    lane_width: u16,
    #[rasn(size("1..=255"))]
    lanes: Vec<Lane>,
}

#[derive(AsnType, Decode, Encode, Clone, Copy, Debug, PartialEq)]
#[rasn(enumerated)]
enum SignalEvent {
    StopAndRemain,
    PermissiveMovementAllowed,
    ProtectedMovementAllowed,
    PermissiveClearance,
    ProtectedClearance,
    Dark,
}

#[derive(AsnType, Decode, Encode, Clone, Debug, PartialEq)]
struct MovementState {
    #[rasn(value("1..=255"))]
    signal_group: u8,
    event_state: SignalEvent,
    #[rasn(value("0..=36001"))]
    min_end_time: u16,
}

#[derive(AsnType, Decode, Encode, Clone, Debug, PartialEq)]
struct SpatData {
    #[rasn(value("0..=65535"))]
    intersection_id: u16,
    #[rasn(value("0..=127"))]
    revision: u8,
    #[rasn(size("1..=255"))]
    movements: Vec<MovementState>,
}

#[derive(AsnType, Decode, Encode, Clone, Copy, Debug, PartialEq)]
#[rasn(enumerated)]
enum RoadUserRole {
    Vehicle,
    Pedestrian,
    Motorcycle,
    Emergency,
}

#[derive(AsnType, Decode, Encode, Clone, Debug, PartialEq)]
struct BsmCore {
    #[rasn(value("0..=127"))]
    msg_cnt: u8,
    #[rasn(size("4"))]
    id: OctetString,
    #[rasn(value("0..=65535"))]
    sec_mark: u16,
    #[rasn(value("-900000000..=900000001"))]
    lat: i64,
    #[rasn(value("-1799999999..=1800000001"))]
    lon: i64,
    #[rasn(value("-4096..=61439"))]
    elev: i32,
    #[rasn(value("0..=8191"))]
    speed: u16,
    #[rasn(value("0..=28800"))]
    heading: u16,
    role: RoadUserRole,
}

#[derive(AsnType, Decode, Encode, Clone, Debug, PartialEq)]
#[rasn(choice)]
enum MessageFrame {
    #[rasn(tag(context, 0))]
    Map(MapData),
    #[rasn(tag(context, 1))]
    Spat(SpatData),
    #[rasn(tag(context, 2))]
    Bsm(BsmCore),
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{:02x}", b)).collect()
}

fn bsm_entry(b: &BsmCore) -> Value {
    let frame = MessageFrame::Bsm(b.clone());
    let enc = rasn::uper::encode(&frame).expect("encode bsm");
    let dec: MessageFrame = rasn::uper::decode(&enc).expect("decode bsm");
    assert_eq!(dec, frame);
    json!({
        "kind": "bsm",
        "msg_count": b.msg_cnt,
        "id": hex(&b.id),
        "sec_mark": b.sec_mark,
        "lat": b.lat,
        "lon": b.lon,
        "elev": b.elev,
        "speed": b.speed,
        "heading": b.heading,
        "role": b.role as u8,
        "uper": hex(&enc),
    })
}

fn spat_entry(s: &SpatData) -> Value {
    let frame = MessageFrame::Spat(s.clone());
    let enc = rasn::uper::encode(&frame).expect("encode spat");
    let dec: MessageFrame = rasn::uper::decode(&enc).expect("decode spat");
    assert_eq!(dec, frame);
    let movements: Vec<Value> = s
        .movements
        .iter()
        .map(|m| json!([m.signal_group, m.event_state as u8, m.min_end_time]))
        .collect();
    json!({
        "kind": "spat",
        "intersection_id": s.intersection_id,
        "revision": s.revision,
        "movements": movements,
        "uper": hex(&enc),
    })
}

fn map_entry(m: &MapData) -> Value {
    let frame = MessageFrame::Map(m.clone());
    let enc = rasn::uper::encode(&frame).expect("encode map");
    let dec: MessageFrame = rasn::uper::decode(&enc).expect("decode map");
    assert_eq!(dec, frame);
    let lanes: Vec<Value> = m
        .lanes
        .iter()
        .map(|l| {
            json!({
                "lane_id": l.lane_id,
                "lane_type": l.lane_type as u8,
                "nodes": l.nodes.iter().map(|n| json!([n.x, n.y])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "kind": "map",
        "intersection_id": m.intersection_id,
        "ref_lat": m.ref_point.lat,
        "ref_lon": m.ref_point.lon,
        "ref_elev": m.ref_point.elev,
        "lane_width": m.lane_width,
        "lanes": lanes,
        "uper": hex(&enc),
    })
}

fn rand_bsm(rng: &mut ChaCha20Rng) -> BsmCore {
    let roles = [
        RoadUserRole::Vehicle,
        RoadUserRole::Pedestrian,
        RoadUserRole::Motorcycle,
        RoadUserRole::Emergency,
    ];
    let mut id = [0u8; 4];
    rng.fill_bytes(&mut id);
    BsmCore {
        msg_cnt: rng.gen_range(0..=127),
        id: OctetString::from(id.to_vec()),
        sec_mark: rng.gen_range(0..=65535),
        lat: rng.gen_range(-900000000..=900000001),
        lon: rng.gen_range(-1799999999..=1800000001),
        elev: rng.gen_range(-4096..=61439),
        speed: rng.gen_range(0..=8191),
        heading: rng.gen_range(0..=28800),
        role: roles[rng.gen_range(0..4)],
    }
}

fn rand_spat(rng: &mut ChaCha20Rng, n_movements: usize) -> SpatData {
    let events = [
        SignalEvent::StopAndRemain,
        SignalEvent::PermissiveMovementAllowed,
        SignalEvent::ProtectedMovementAllowed,
        SignalEvent::PermissiveClearance,
        SignalEvent::ProtectedClearance,
        SignalEvent::Dark,
    ];
    let mut groups: Vec<u8> = (1..=255).collect();
    groups.shuffle(rng);
    let movements = groups[..n_movements]
        .iter()
        .map(|&sg| MovementState {
            signal_group: sg,
            event_state: events[rng.gen_range(0..6)],
            min_end_time: rng.gen_range(0..=36001),
        })
        .collect();
    SpatData {
        intersection_id: rng.gen_range(0..=65535),
        revision: rng.gen_range(0..=127),
        movements,
    }
}

fn rand_map(rng: &mut ChaCha20Rng, n_lanes: usize, max_nodes: usize) -> MapData {
    let mut ids: Vec<u8> = (0..=255).collect();
    ids.shuffle(rng);
    let lanes = ids[..n_lanes]
        .iter()
        .map(|&lane_id| {
            let n_nodes = rng.gen_range(2..=max_nodes.max(2));
            Lane {
                lane_id,
                lane_type: if rng.gen_bool(0.2) {
                    LaneKind::Crosswalk
                } else {
                    LaneKind::Vehicle
                },
                nodes: (0..n_nodes)
                    .map(|_| NodeXY {
                        x: rng.gen_range(-32768..=32767),
                        y: rng.gen_range(-32768..=32767),
                    })
                    .collect(),
            }
        })
        .collect();
    MapData {
        intersection_id: rng.gen_range(0..=65535),
        ref_point: RefPoint {
            lat: rng.gen_range(-900000000..=900000001),
            lon: rng.gen_range(-1799999999..=1800000001),
            elev: rng.gen_range(-4096..=61439),
        },
        lane_width: rng.gen_range(0..=32767),
        lanes,
    }
}

fn edge_entries() -> Vec<Value> {
    let mut out = Vec::new();

    // All position/motion fields at their unavailable codes.
    out.push(bsm_entry(&BsmCore {
        msg_cnt: 0,
        id: OctetString::from(vec![0u8; 4]),
        sec_mark: 0,
        lat: 900000001,
        lon: 1800000001,
        elev: -4096,
        speed: 8191,
        heading: 28800,
        role: RoadUserRole::Vehicle,
    }));
    // Field minima and maxima.
    out.push(bsm_entry(&BsmCore {
        msg_cnt: 0,
        id: OctetString::from(vec![0u8; 4]),
        sec_mark: 0,
        lat: -900000000,
        lon: -1799999999,
        elev: -4096,
        speed: 0,
        heading: 0,
        role: RoadUserRole::Vehicle,
    }));
    out.push(bsm_entry(&BsmCore {
        msg_cnt: 127,
        id: OctetString::from(vec![0xffu8; 4]),
        sec_mark: 65535,
        lat: 900000001,
        lon: 1800000001,
        elev: 61439,
        speed: 8191,
        heading: 28800,
        role: RoadUserRole::Emergency,
    }));
    out.push(bsm_entry(&BsmCore {
        msg_cnt: 64,
        id: OctetString::from(vec![0xde, 0xad, 0xbe, 0xef]),
        sec_mark: 59999,
        lat: 1,
        lon: -1,
        elev: 0,
        speed: 500,
        heading: 28799,
        role: RoadUserRole::Pedestrian,
    }));

    // Minimal and maximal signal states.
    out.push(spat_entry(&SpatData {
        intersection_id: 0,
        revision: 0,
        movements: vec![MovementState {
            signal_group: 1,
            event_state: SignalEvent::StopAndRemain,
            min_end_time: 0,
        }],
    }));
    let all_events = [
        SignalEvent::StopAndRemain,
        SignalEvent::PermissiveMovementAllowed,
        SignalEvent::ProtectedMovementAllowed,
        SignalEvent::PermissiveClearance,
        SignalEvent::ProtectedClearance,
        SignalEvent::Dark,
    ];
    out.push(spat_entry(&SpatData {
        intersection_id: 65535,
        revision: 127,
        movements: all_events
            .iter()
            .enumerate()
            .map(|(i, &e)| MovementState {
                signal_group: (250 + i) as u8,
                event_state: e,
                min_end_time: if i % 2 == 0 { 36001 } else { i as u16 },
            })
            .collect(),
    }));
    out.push(spat_entry(&SpatData {
        intersection_id: 1001,
        revision: 1,
        movements: (1..=255)
            .map(|sg| MovementState {
                signal_group: sg,
                event_state: all_events[(sg as usize) % 6],
                min_end_time: (sg as u16) * 100,
            })
            .collect(),
    }));
    // A small fixed signal value, also used by decode-direction unit tests.
    out.push(spat_entry(&SpatData {
        intersection_id: 1001,
        revision: 1,
        movements: vec![
            MovementState {
                signal_group: 1,
                event_state: SignalEvent::ProtectedMovementAllowed,
                min_end_time: 40,
            },
            MovementState {
                signal_group: 2,
                event_state: SignalEvent::StopAndRemain,
                min_end_time: 40,
            },
        ],
    }));

    // Minimal geometry, crosswalk, and node-count extremes.
    out.push(map_entry(&MapData {
        intersection_id: 0,
        ref_point: RefPoint { lat: 0, lon: 0, elev: 0 },
        lane_width: 0,
        lanes: vec![Lane {
            lane_id: 0,
            lane_type: LaneKind::Vehicle,
            nodes: vec![NodeXY { x: 0, y: 0 }, NodeXY { x: 1, y: -1 }],
        }],
    }));
    out.push(map_entry(&MapData {
        intersection_id: 1001,
        ref_point: RefPoint {
            lat: 399999000,
            lon: -830000000,
            elev: 2200,
        },
        lane_width: 32767,
        lanes: vec![
            Lane {
                lane_id: 255,
                lane_type: LaneKind::Crosswalk,
                nodes: vec![
                    NodeXY { x: -32768, y: 32767 },
                    NodeXY { x: 32767, y: -32768 },
                ],
            },
            Lane {
                lane_id: 1,
                lane_type: LaneKind::Vehicle,
                nodes: (0..63).map(|i| NodeXY { x: i * 100, y: -i * 100 }).collect(),
            },
        ],
    }));
    out.push(map_entry(&MapData {
        intersection_id: 7,
        ref_point: RefPoint {
            lat: 900000001,
            lon: 1800000001,
            elev: -4096,
        },
        lane_width: 366,
        lanes: vec![Lane {
            lane_id: 9,
            lane_type: LaneKind::Vehicle,
            nodes: vec![NodeXY { x: -300, y: 1500 }, NodeXY { x: -300, y: 50 }],
        }],
    }));

    out
}

fn gen_uper_corpus(out_path: &str) {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed0c0de);
    let mut entries = edge_entries();

    for _ in 0..50 {
        entries.push(bsm_entry(&rand_bsm(&mut rng)));
    }
    for i in 0..45 {
        let n = if i < 40 { rng.gen_range(1..=8) } else { rng.gen_range(100..=255) };
        entries.push(spat_entry(&rand_spat(&mut rng, n)));
    }
    for i in 0..40 {
        let n_lanes = if i < 36 { rng.gen_range(1..=8) } else { rng.gen_range(60..=120) };
        let max_nodes = if i < 36 { 10 } else { 63 };
        entries.push(map_entry(&rand_map(&mut rng, n_lanes, max_nodes)));
    }

    let doc = json!({
        "generator": "rasn 0.18.0 (uper), seed 0x5eed0c0de",
        "count": entries.len(),
        "entries": entries,
    });
    let mut f = std::fs::File::create(out_path).expect("create corpus file");
    f.write_all(serde_json::to_string_pretty(&doc).unwrap().as_bytes())
        .unwrap();
    f.write_all(b"\n").unwrap();
    println!("wrote {} ({} entries)", out_path, doc["count"]);
}

fn packet_records() -> Vec<(u32, u32, Vec<u8>, u32)> {
    vec![
        (100, 5000, vec![0xde, 0xad, 0xbe, 0xef], 4),
        (100, 999999, (0u8..60).collect(), 60),
        (101, 0, vec![], 0),
        (101, 250000, vec![0xaa, 0xbb], 10), // snap-truncated record
    ]
}

fn gen_pcap_interop(pcap_path: &str, json_path: &str) {
    use pcap_file::pcap::{PcapHeader, PcapPacket, PcapWriter};
    use pcap_file::{DataLink, Endianness, TsResolution};
    use std::borrow::Cow;
    use std::time::Duration;

    let header = PcapHeader {
        version_major: 2,
        version_minor: 4,
        ts_correction: 0,
        ts_accuracy: 0,
        snaplen: 65535,
        datalink: DataLink::ETHERNET,
        ts_resolution: TsResolution::MicroSecond,
        endianness: Endianness::Little,
    };
    let file = std::fs::File::create(pcap_path).expect("create pcap");
    let mut writer = PcapWriter::with_header(file, header).expect("pcap writer");
    for (sec, usec, data, orig) in packet_records() {
        writer
            .write_packet(&PcapPacket {
                timestamp: Duration::new(sec as u64, usec * 1000),
                orig_len: orig,
                data: Cow::Owned(data),
            })
            .expect("write packet");
    }
    drop(writer);
    println!("wrote {}", pcap_path);

    let records: Vec<Value> = packet_records()
        .iter()
        .map(|(sec, usec, data, orig)| {
            json!({"ts_sec": sec, "ts_frac": usec, "orig_len": orig, "payload": hex(data)})
        })
        .collect();
    let doc = json!({
        "writer": "pcap-file 2.0.0",
        "link_type": 1,
        "resolution": "micro",
        "byte_order": "little",
        "records": records,
    });
    std::fs::write(json_path, serde_json::to_string_pretty(&doc).unwrap() + "\n").unwrap();
    println!("wrote {}", json_path);
}

fn dump_pcap(path: &str) {
    use pcap_file::pcap::PcapReader;
    use pcap_file::TsResolution;

    let file = std::fs::File::open(path).expect("open pcap");
    let mut reader = PcapReader::new(file).expect("pcap reader");
    let header = reader.header();
    let resolution = header.ts_resolution;
    let mut records = Vec::new();
    while let Some(pkt) = reader.next_packet() {
        let pkt = pkt.expect("read packet");
        let frac = match resolution {
            TsResolution::MicroSecond => pkt.timestamp.subsec_micros(),
            TsResolution::NanoSecond => pkt.timestamp.subsec_nanos(),
        };
        records.push(json!({
            "ts_sec": pkt.timestamp.as_secs(),
            "ts_frac": frac,
            "orig_len": pkt.orig_len,
            "payload": hex(&pkt.data),
        }));
    }
    let doc = json!({
        "reader": "pcap-file 2.0.0",
        "link_type": u32::from(header.datalink),
        "resolution": match resolution { TsResolution::MicroSecond => "micro", TsResolution::NanoSecond => "nano" },
        "byte_order": match header.endianness { pcap_file::Endianness::Little => "little", pcap_file::Endianness::Big => "big" },
        "records": records,
    });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    match args.get(1).map(String::as_str) {
        Some("uper-corpus") => gen_uper_corpus(args.get(2).map(String::as_str).unwrap_or("../data/uper_oracle.json")),
        Some("pcap-interop") => gen_pcap_interop(
            args.get(2).map(String::as_str).unwrap_or("../data/interop_rust.pcap"),
            args.get(3).map(String::as_str).unwrap_or("../data/interop_rust.json"),
        ),
        Some("pcap-dump") => dump_pcap(args.get(2).expect("pcap-dump <file>")),
        _ => {
            eprintln!("usage: oracle_gen uper-corpus [out.json] | pcap-interop [out.pcap out.json] | pcap-dump <file>");
            std::process::exit(2);
        }
    }
}
