#!/usr/bin/env node
// Compiles the fixture contracts and writes their runtime bytecode as hex
// files under tests/fixtures/. Requires the `solc` npm package (0.8.x):
//
//   npm install solc@0.8.19 && node compile.js
//
// The generated .hex files are committed; rerunning this script must be a
// no-op unless contracts.sol changed.
'use strict';
const fs = require('fs');
const path = require('path');
const solc = require('solc');

const here = __dirname;
const outDir = path.join(here, '..', 'tests', 'fixtures');

const fixtures = {
  HiddenMintToken: 'fig5_hidden_mint',
  LimitSellToken: 'fig6_limit_flag',
  FreezeToken: 'fig7_freeze_map',
  LeakToken: 'fig8_leak_token',
  FeeToken: 'fig9_fee',
  UncheckedBurnToken: 'fig10_unchecked_burn',
  ConstOwnerMint: 'mal_const_owner_mint',
  SupplyMintToken: 'mal_supply_mint',
  BlacklistToken: 'mal_blacklist',
  WhitelistToken: 'mal_whitelist',
  TradingGateToken: 'mal_trading_gate',
  WithdrawFromToken: 'mal_withdraw_from',
  AdminTransferToken: 'mal_admin_transfer',
  TaxToken: 'mal_tax',
  BasisPointFeeToken: 'mal_bps_fee',
  ComboToken: 'mal_combo',
  IssueToken: 'mal_issue',
  BenignERC20: 'benign_erc20',
  ClampedSetterToken: 'benign_clamped_setter',
  PausableByAnyone: 'benign_pausable',
  BurnableToken: 'benign_burnable',
  RenounceableToken: 'benign_renounceable',
  MetadataToken: 'benign_metadata',
  FixedSupplyToken: 'benign_fixed_supply',
  OwnershipToken: 'benign_ownership',
  TogglePauseToken: 'benign_toggle_pause',
  StaticFeeToken: 'benign_static_fee',
  BoundedMaxTxToken: 'benign_bounded_maxtx',
  ParameterVault: 'benign_parameter_vault',
  ExplicitCheckToken: 'benign_explicit_check',
  AirdropToken: 'benign_airdrop',
  BurnFromToken: 'benign_burn_from',
};

const input = {
  language: 'Solidity',
  sources: { 'contracts.sol': { content: fs.readFileSync(path.join(here, 'contracts.sol'), 'utf8') } },
  settings: {
    optimizer: { enabled: true, runs: 200 },
    outputSelection: { '*': { '*': ['evm.deployedBytecode.object'] } },
  },
};

const out = JSON.parse(solc.compile(JSON.stringify(input)));
let failed = false;
for (const err of out.errors || []) {
  if (err.severity === 'error') {
    console.error(err.formattedMessage);
    failed = true;
  }
}
if (failed) process.exit(1);

fs.mkdirSync(outDir, { recursive: true });
const contracts = out.contracts['contracts.sol'];
for (const [name, file] of Object.entries(fixtures)) {
  if (!contracts[name]) {
    console.error(`missing contract ${name}`);
    process.exit(1);
  }
  const code = contracts[name].evm.deployedBytecode.object;
  fs.writeFileSync(path.join(outDir, `${file}.hex`), code + '\n');
  console.log(`${file}.hex ${code.length / 2} bytes`);
}
